#pragma once

#include "cubiph/reduce.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace cubiph {

enum class DegreeSelection { H0, H1, Both };

/// What happens to essential (infinite) classes in length-based features.
enum class EssentialPolicy {
  Exclude,  ///< finite bars only
  CapAtOne, ///< infinite death replaced by 1.0
};

/// (birth, death) in grey values.
using DiagramPoint = std::pair<double, double>;

/// Finite points of the selected degrees; essentials dropped or capped at 1.
std::vector<DiagramPoint> select_points(const DiagramSet& d, DegreeSelection degree,
                                        EssentialPolicy essentials = EssentialPolicy::Exclude);

/// Bar lengths death - birth of the selected points, sorted descending.
std::vector<double> bar_lengths(const DiagramSet& d, DegreeSelection degree,
                                EssentialPolicy essentials = EssentialPolicy::Exclude);

/// Max-plus summaries of a set of bar lengths.
struct TropicalVector {
  double t1 = 0.0; ///< largest length
  double t2 = 0.0; ///< sum of the two largest
  double t3 = 0.0;
  double t4 = 0.0;
  double mean_d = 0.0;

  double t(int k) const;
};

/// t_k = sum of the k largest lengths, with missing entries counted as 0.
TropicalVector tropical_coordinates(std::span<const double> lengths);

enum class BarMode {
  Interval, ///< some length in [floor, theta]
  AtLeast,  ///< some length >= theta
};

/// 1 when a bar meets the criterion, else 0. Interval mode with
/// floor > theta throws ParameterError.
int binary_bar_feature(std::span<const double> lengths, BarMode mode, double theta,
                       double floor = 0.1);

/// Persistence image parameters. Grid nodes sit at the lower-left corners of
/// n equal cells per axis: p_i = birth_lo + (birth_hi - birth_lo) * i / n,
/// likewise q_j over the persistence range.
struct PIParams {
  double a = 0.0025; ///< Gaussian covariance a*I
  double b = 0.1;    ///< weight ramp reaches 1 at persistence b
  std::size_t resolution = 32;
  double birth_lo = 0.0;
  double birth_hi = 1.0;
  double pers_lo = 0.0;
  double pers_hi = 1.0;

  void validate() const;
  double birth_node(std::size_t i) const;
  double pers_node(std::size_t j) const;
};

enum class PIMode { PointSampled, CellAveraged };

/// n x n grid; entry (i,j) belongs to birth node i and persistence node j.
struct PersistenceImage {
  PIParams params;
  PIMode mode = PIMode::PointSampled;
  std::vector<double> values;

  std::size_t n() const { return params.resolution; }
  double at(std::size_t i, std::size_t j) const { return values[i * params.resolution + j]; }
  double sum() const;
};

/// Ramp weight of a point (birth, persistence): 0 at or below 0, p/b below b, then 1.
double pi_weight(double persistence, double b);

PersistenceImage persistence_image(std::span<const DiagramPoint> points, const PIParams& p);
PersistenceImage persistence_image(const DiagramSet& d, DegreeSelection degree, const PIParams& p,
                                   EssentialPolicy essentials = EssentialPolicy::Exclude);

/// Cell averages of the persistence image over [p_i, p_i+1) x [q_j, q_j+1),
/// evaluated in closed form from Gaussian CDFs.
PersistenceImage persistence_image_averaged(std::span<const DiagramPoint> points, const PIParams& p);
PersistenceImage persistence_image_averaged(const DiagramSet& d, DegreeSelection degree,
                                            const PIParams& p,
                                            EssentialPolicy essentials = EssentialPolicy::Exclude);

struct ComplexGrid {
  std::size_t n = 0;
  std::vector<std::complex<double>> values;

  const std::complex<double>& at(std::size_t k1, std::size_t k2) const { return values[k1 * n + k2]; }
};

/// Unnormalized forward 2D DFT of a persistence image.
ComplexGrid fourier_coefficients(const PersistenceImage& pi);

struct Blob {
  std::size_t row = 0;
  std::size_t col = 0;
  double peak = 0.0;
  double volume = 0.0; ///< summed value of the cells in the basin
};

struct BlobSummary {
  std::size_t count = 0;
  std::vector<Blob> blobs; ///< row-major order of the peaks
  /// Mass of above-threshold cells whose ascent ends on a plateau rather
  /// than a strict maximum.
  double unassigned_mass = 0.0;
  /// Mass of all cells with value > epsilon.
  double total_mass = 0.0;
};

/// Strict local maxima over the 8-neighbourhood with value > epsilon. Every
/// cell above epsilon climbs to its largest neighbour (smallest row-major
/// index on ties) until no neighbour is larger.
BlobSummary count_blobs(const PersistenceImage& pi, double epsilon);

/// Everything computed per image by the batch pipeline.
struct FeatureConfig {
  DegreeSelection degree = DegreeSelection::H1;
  EssentialPolicy essentials = EssentialPolicy::Exclude;
  BarMode mode = BarMode::Interval;
  std::vector<double> theta_grid;
  double floor = 0.1;
  PIParams pi;
  double blob_epsilon = 1e-3;
};

/// Row of the label CSV.
struct FeatureRecord {
  std::size_t image_id = 0;
  int class_label = 0;
  std::vector<int> binary; ///< one per theta
  TropicalVector tropical;
  std::size_t blob_count = 0;
  std::size_t n_bars = 0;
  double total_length = 0.0;
};

struct ImageFeatures {
  FeatureRecord record;
  PersistenceImage pi;
  PersistenceImage pi_averaged;
  ComplexGrid fourier;
  BlobSummary blobs;
};

ImageFeatures extract_features(const DiagramSet& d, const FeatureConfig& cfg,
                               std::size_t image_id = 0, int class_label = 0);

} // namespace cubiph
