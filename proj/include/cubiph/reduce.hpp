#pragma once

#include "cubiph/boundary.hpp"
#include "cubiph/complex.hpp"
#include "cubiph/image.hpp"

#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace cubiph {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// One birth-death point. Essential classes have no death rank and death = +inf.
struct PersistencePair {
  Rank birth_rank = 0;
  std::optional<Rank> death_rank;
  double birth = 0.0;
  double death = kInfinity;
  int degree = 0;

  bool essential() const { return !death_rank.has_value(); }
  double persistence() const { return death - birth; }
};

/// Persistence diagrams of an image in degrees 0 and 1.
struct DiagramSet {
  std::vector<PersistencePair> h0;
  std::vector<PersistencePair> h1;
  bool drop_zero = true;

  const std::vector<PersistencePair>& degree(int d) const { return d == 0 ? h0 : h1; }
};

/// Birth-death pairing read off a reduced boundary matrix, in 0-based ranks.
struct Pairing {
  std::vector<std::pair<Rank, Rank>> pairs; ///< (birth, death), ordered by death
  std::vector<Rank> essential;              ///< ascending
};

struct ReduceOptions {
  /// Skip columns already known to reduce to zero (their index is the pivot
  /// of a higher-dimensional column). Produces the same pairing either way.
  bool clearing = true;
};

struct ReductionResult {
  std::vector<std::vector<Rank>> reduced; ///< reduced column per rank, ascending rows
  Pairing pairing;
};

/// Standard left-to-right GF(2) column reduction.
ReductionResult reduce_matrix(const BoundaryMatrix& b, ReduceOptions options = {});

/// Grey-value diagrams from a pairing on `f`. With `drop_zero`, pairs with
/// death == birth are omitted.
DiagramSet extract_diagrams(const Pairing& pairing, const Filtration& f, bool drop_zero = true);

struct PhConfig {
  bool drop_zero = true;
  bool clearing = true;
};

/// image -> complex -> canonical filtration -> boundary -> reduction -> diagrams.
DiagramSet compute_ph(const GreyImage& img, const PhConfig& cfg = {});

/// Diagrams of an already-built filtration.
DiagramSet compute_ph(const Filtration& f, const PhConfig& cfg = {});

/// (birth, death) of every point of one degree, sorted; the multiset view used
/// to compare diagrams from different filtration orders.
std::vector<std::pair<double, double>> diagram_points(const DiagramSet& d, int degree);

} // namespace cubiph
