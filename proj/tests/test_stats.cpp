#include "cubiph/error.hpp"
#include "cubiph/io.hpp"
#include "cubiph/oracle.hpp"
#include "cubiph/stats.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace cubiph;

namespace {

DiagramSet bars(std::initializer_list<double> lengths) {
  DiagramSet d;
  Rank r = 0;
  for (double l : lengths)
    d.h1.push_back(PersistencePair{r++, r, 0.0, l, 1});
  return d;
}

} // namespace

TEST_SUITE("stats") {

TEST_CASE("bar count histogram") {
  const std::vector<DiagramSet> ds{bars({0.2}), bars({0.1, 0.3, 0.5})};
  const std::vector<int> labels{0, 1};
  const auto s = compute_stats(ds, labels, 0.3, BarMode::AtLeast);
  CHECK(s.dataset_size == 2);
  CHECK(s.bar_count_histogram == std::map<std::size_t, std::size_t>{{1, 1}, {3, 1}});
  CHECK(s.ph_class_counts == std::array<std::size_t, 2>{1, 1});
  CHECK(s.crosstab.at(1)[1].bars == 3);
  CHECK(s.crosstab.at(1)[1].avg_length() == doctest::Approx(0.3));
  CHECK_NOTHROW(check_stats_identities(s));

  const auto wide = compute_stats(ds, labels, 0.3, BarMode::AtLeast, {DegreeSelection::H1,
                                  EssentialPolicy::Exclude, 0.1, 2});
  CHECK(wide.bar_count_histogram == std::map<std::size_t, std::size_t>{{0, 1}, {2, 1}});
}

TEST_CASE("theta 1 in at-least mode puts every image in class 0") {
  const std::vector<DiagramSet> ds{bars({0.2}), bars({0.9, 0.3}), bars({})};
  const std::vector<int> labels{4, 4, 2};
  const auto s = compute_stats(ds, labels, 1.0, BarMode::AtLeast);
  CHECK(s.ph_class_counts == std::array<std::size_t, 2>{3, 0});
  CHECK(s.class_totals.at(4) == 2);
  CHECK(s.crosstab.at(2)[0].avg_bars() == 0.0);
  CHECK(s.crosstab.at(2)[0].avg_length() == 0.0);
}

TEST_CASE("single image") {
  const std::vector<DiagramSet> ds{bars({0.35})};
  const std::vector<int> labels{7};
  const auto s = compute_stats(ds, labels, 0.3, BarMode::AtLeast);
  CHECK(s.ph_class_counts == std::array<std::size_t, 2>{0, 1});
  CHECK(s.crosstab.size() == 1);
  CHECK(s.crosstab.at(7)[1].images == 1);
  CHECK(s.crosstab.at(7)[0].images == 0);
}

TEST_CASE("length mismatch is an input error") {
  const std::vector<DiagramSet> ds{bars({0.35})};
  const std::vector<int> labels{1, 2};
  CHECK_THROWS_AS(compute_stats(ds, labels, 0.3, BarMode::AtLeast), InputError);
}

TEST_CASE("identity checker catches inconsistent tables") {
  DatasetStats s;
  s.dataset_size = 1;
  s.bar_count_histogram[0] = 1;
  s.ph_class_counts = {1, 0};
  s.class_totals[0] = 1;
  s.crosstab[0][0].images = 1;
  CHECK_NOTHROW(check_stats_identities(s));
  s.ph_class_counts = {1, 1};
  CHECK_THROWS_AS(check_stats_identities(s), InternalError);
}

TEST_CASE("identities and label round trip on random data") {
  std::mt19937_64 rng(31);
  FeatureConfig cfg;
  cfg.theta_grid = {0.15, 0.3, 0.55};
  cfg.mode = BarMode::Interval;
  std::vector<DiagramSet> ds;
  std::vector<int> labels;
  std::vector<FeatureRecord> records;
  for (std::size_t i = 0; i < 60; ++i) {
    ds.push_back(compute_ph(oracle::random_image(rng, 5, 5, 5)));
    labels.push_back(static_cast<int>(rng() % 3));
    records.push_back(extract_features(ds.back(), cfg, i, labels.back()).record);
  }
  for (std::size_t k = 0; k < cfg.theta_grid.size(); ++k) {
    const auto direct = compute_stats(ds, labels, cfg.theta_grid[k], cfg.mode);
    CHECK_NOTHROW(check_stats_identities(direct));

    std::stringstream csv;
    write_feature_header(csv, cfg.theta_grid);
    for (const auto& r : records)
      write_feature_row(csv, r);
    const auto table = read_feature_csv(csv);
    const auto again = aggregate_stats(summaries_from_records(table.records, k));
    CHECK(again == direct);
  }
  CHECK_THROWS_AS(summaries_from_records(records, 3), InputError);
}

} // TEST_SUITE
