#pragma once

#include "cubiph/image.hpp"
#include "cubiph/reduce.hpp"

#include "cubiph/complex.hpp"

#include <random>
#include <span>
#include <vector>

namespace cubiph::oracle {

/// Betti numbers of the sublevel complexes at each threshold.
struct BettiCurves {
  std::vector<double> thresholds;
  std::vector<long> beta0;
  std::vector<long> beta1;
  /// V - E + S of the sublevel complex; only filled by the brute-force route.
  std::vector<long> euler;

  friend bool operator==(const BettiCurves& a, const BettiCurves& b) {
    return a.thresholds == b.thresholds && a.beta0 == b.beta0 && a.beta1 == b.beta1;
  }
};

/// Disjoint sets with path halving and union by size.
class UnionFind {
public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  /// Returns false when both were already in one set.
  bool unite(std::size_t a, std::size_t b);

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Betti curves straight from the pixels: at every distinct grey value t,
/// counts the vertices, edges and squares whose pixels are all <= t, merges
/// vertices with union-find for beta0 and takes beta1 from the Euler
/// characteristic. Never touches the complex, boundary or reduction code.
BettiCurves betti_curve_bruteforce(const GreyImage& img);

/// Betti numbers implied by diagrams under half-open [birth, death) counting.
BettiCurves betti_curve_from_diagrams(const DiagramSet& d, std::span<const double> thresholds);

/// Largest sum of at most k entries, by enumerating every index subset.
/// Subset sums are accumulated largest-first. Throws OracleScopeError for
/// more than 20 lengths or k outside 1..4.
double tropical_bruteforce(std::span<const double> lengths, int k);

/// Random h x w image whose values are drawn uniformly from
/// {0, 1/(levels-1), ..., 1}; a single level gives a constant 0 image.
GreyImage random_image(std::mt19937_64& rng, std::size_t height, std::size_t width, std::size_t levels);

/// Uniformly random choice among ready cells, level by level: within each
/// grey value, cells are emitted in a random topological order of the face
/// relation. Every valid filtration order can be produced.
std::vector<CellIndex> random_valid_order(const CubicalComplex& cc, std::mt19937_64& rng);

} // namespace cubiph::oracle
