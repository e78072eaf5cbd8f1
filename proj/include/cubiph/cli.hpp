#pragma once

#include "cubiph/features.hpp"
#include "cubiph/ingest.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cubiph::cli {

/// Exit codes of the command-line driver.
enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageOrIo = 2 };

/// Theta grid of the MNIST bar features, used in Interval mode.
std::vector<double> mnist_theta_grid();
/// Ten equally spaced thetas on [0.15, 0.55], used in AtLeast mode.
std::vector<double> cifar_theta_grid();

struct PipelineConfig {
  std::filesystem::path dataset;
  DatasetFormat format = DatasetFormat::Csv;
  std::filesystem::path labels;
  GreyConversion grey = GreyConversion::Luminance;
  std::size_t limit = 0; ///< 0 = whole dataset

  bool drop_zero = true;
  FeatureConfig features;

  std::filesystem::path out = "out";
  std::size_t jobs = 1;
  std::uint64_t seed = 0;

  // stats
  double stats_theta = 0.3;
  std::size_t bin_width = 1;
  std::filesystem::path from_labels;

  // export-graph
  bool node_features = false;
  bool matrices = false;

  // features
  std::string pi_format = "csv";

  // verify
  std::size_t samples = 100;
  std::size_t random_size = 6;
  std::size_t levels = 4;
};

/// Parses arguments and runs one subcommand. Messages go to `out` / `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cubiph::cli
