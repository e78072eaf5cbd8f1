#include "cubiph/stats.hpp"

#include "cubiph/error.hpp"

#include <numeric>

namespace cubiph {

ImageSummary summarize(const DiagramSet& d, int class_label, double theta, BarMode mode,
                       const StatsOptions& options) {
  const auto lengths = bar_lengths(d, options.degree, options.essentials);
  ImageSummary s;
  s.class_label = class_label;
  s.n_bars = lengths.size();
  s.total_length = std::accumulate(lengths.begin(), lengths.end(), 0.0);
  s.ph_class = binary_bar_feature(lengths, mode, theta, options.floor);
  return s;
}

std::vector<ImageSummary> summaries_from_records(std::span<const FeatureRecord> records,
                                                 std::size_t theta_index) {
  std::vector<ImageSummary> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (theta_index >= r.binary.size())
      throw InputError("feature record " + std::to_string(r.image_id) + " has no theta column " +
                       std::to_string(theta_index));
    out.push_back({r.class_label, r.n_bars, r.total_length, r.binary[theta_index]});
  }
  return out;
}

DatasetStats aggregate_stats(std::span<const ImageSummary> summaries, std::size_t bin_width) {
  if (bin_width == 0)
    throw ParameterError("histogram bin width must be >= 1");
  DatasetStats s;
  s.dataset_size = summaries.size();
  s.bin_width = bin_width;
  for (const auto& img : summaries) {
    ++s.bar_count_histogram[img.n_bars / bin_width * bin_width];
    ++s.ph_class_counts[img.ph_class ? 1 : 0];
    ++s.class_totals[img.class_label];
    auto& cell = s.crosstab[img.class_label][img.ph_class ? 1 : 0];
    ++cell.images;
    cell.bars += img.n_bars;
    cell.length_sum += img.total_length;
  }
  return s;
}

DatasetStats compute_stats(std::span<const DiagramSet> diagrams, std::span<const int> class_labels,
                           double theta, BarMode mode, const StatsOptions& options) {
  if (diagrams.size() != class_labels.size())
    throw InputError("stats: " + std::to_string(diagrams.size()) + " diagrams but " +
                     std::to_string(class_labels.size()) + " class labels");
  std::vector<ImageSummary> summaries;
  summaries.reserve(diagrams.size());
  for (std::size_t i = 0; i < diagrams.size(); ++i)
    summaries.push_back(summarize(diagrams[i], class_labels[i], theta, mode, options));
  return aggregate_stats(summaries, options.bin_width);
}

void check_stats_identities(const DatasetStats& s) {
  std::size_t hist = 0;
  for (const auto& [bin, count] : s.bar_count_histogram)
    hist += count;
  if (hist != s.dataset_size)
    throw InternalError("stats: histogram counts sum to " + std::to_string(hist) + ", dataset has " +
                        std::to_string(s.dataset_size));
  if (s.ph_class_counts[0] + s.ph_class_counts[1] != s.dataset_size)
    throw InternalError("stats: PH class counts do not sum to the dataset size");
  std::array<std::size_t, 2> by_ph{0, 0};
  for (const auto& [label, cells] : s.crosstab) {
    const auto total = s.class_totals.find(label);
    const std::size_t expected = total == s.class_totals.end() ? 0 : total->second;
    if (cells[0].images + cells[1].images != expected)
      throw InternalError("stats: crosstab row for class " + std::to_string(label) +
                          " does not sum to the class total");
    by_ph[0] += cells[0].images;
    by_ph[1] += cells[1].images;
  }
  if (by_ph != s.ph_class_counts)
    throw InternalError("stats: crosstab columns disagree with PH class counts");
}

} // namespace cubiph
