#pragma once

#include "cubiph/features.hpp"
#include "cubiph/reduce.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace cubiph {

/// What the dataset statistics need to know about one image.
struct ImageSummary {
  int class_label = 0;
  std::size_t n_bars = 0;
  double total_length = 0.0;
  int ph_class = 0; ///< binary bar feature at the chosen theta
};

struct CrosstabCell {
  std::size_t images = 0;
  std::size_t bars = 0;
  double length_sum = 0.0;

  double avg_bars() const { return images == 0 ? 0.0 : static_cast<double>(bars) / static_cast<double>(images); }
  double avg_length() const { return bars == 0 ? 0.0 : length_sum / static_cast<double>(bars); }

  friend bool operator==(const CrosstabCell&, const CrosstabCell&) = default;
};

struct DatasetStats {
  std::size_t dataset_size = 0;
  std::size_t bin_width = 1;
  /// Lower bin edge (a bar count) -> number of images.
  std::map<std::size_t, std::size_t> bar_count_histogram;
  std::array<std::size_t, 2> ph_class_counts{0, 0};
  /// Image class -> cells for PH class 0 and 1.
  std::map<int, std::array<CrosstabCell, 2>> crosstab;
  /// Images per image class.
  std::map<int, std::size_t> class_totals;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

struct StatsOptions {
  DegreeSelection degree = DegreeSelection::H1;
  EssentialPolicy essentials = EssentialPolicy::Exclude;
  double floor = 0.1;
  std::size_t bin_width = 1;
};

ImageSummary summarize(const DiagramSet& d, int class_label, double theta, BarMode mode,
                       const StatsOptions& options = {});

/// Per-image summaries from label records, reading the binary column `theta_index`.
std::vector<ImageSummary> summaries_from_records(std::span<const FeatureRecord> records,
                                                 std::size_t theta_index);

/// Serial, deterministic fold over image summaries.
DatasetStats aggregate_stats(std::span<const ImageSummary> summaries, std::size_t bin_width = 1);

/// Throws InputError when the two spans differ in length.
DatasetStats compute_stats(std::span<const DiagramSet> diagrams, std::span<const int> class_labels,
                           double theta, BarMode mode, const StatsOptions& options = {});

/// Histogram, PH-class and crosstab totals all add up to the dataset size.
/// Throws InternalError naming the first broken identity.
void check_stats_identities(const DatasetStats& s);

} // namespace cubiph
