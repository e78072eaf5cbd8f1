#pragma once

#include "cubiph/image.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cubiph {

/// Index of a cell in the (2h-1)x(2w-1) cell grid, row-major.
using CellIndex = std::uint32_t;

/// Position of a cell in a filtration, 0-based. Printed rank matrices add 1.
using Rank = std::uint32_t;

/// Cubical complex of an image with grey values extended to every cell.
///
/// Cell (i,j) of the grid is a vertex when both coordinates are even, an
/// edge when exactly one is odd, and a square when both are odd. Vertex
/// (2r,2c) is pixel (r,c). Every cell carries the maximum grey value of the
/// pixels in its closure.
class CubicalComplex {
public:
  CubicalComplex() = default;

  /// Raw constructor for fixtures; does not check the max-of-faces rule.
  CubicalComplex(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  double value(CellIndex cell) const { return values_[cell]; }
  double value(std::size_t row, std::size_t col) const { return values_[row * cols_ + col]; }
  const std::vector<double>& values() const { return values_; }

  int dimension(CellIndex cell) const {
    return static_cast<int>((cell / cols_) % 2 + (cell % cols_) % 2);
  }
  static int dimension(std::size_t row, std::size_t col) {
    return static_cast<int>(row % 2 + col % 2);
  }

  CellIndex index(std::size_t row, std::size_t col) const {
    return static_cast<CellIndex>(row * cols_ + col);
  }

  /// Codimension-1 faces of a cell: none for a vertex, 2 for an edge, 4 for a square.
  /// Returns the count written into `out`.
  std::size_t faces(CellIndex cell, CellIndex (&out)[4]) const;

  /// Counts of vertices, edges, squares.
  std::size_t count_of_dimension(int dim) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Extends the grey values of `img` to its cubical complex.
/// Throws DomainError on an empty image.
CubicalComplex build_cubical_complex(const GreyImage& img);

/// How build_filtration orders the cells.
struct OrderPolicy {
  enum class Kind { Canonical, Explicit };

  Kind kind = Kind::Canonical;
  /// Explicit only: 1-based rank per cell, row-major over the cell grid
  /// (the layout of the printed FCC matrix).
  std::vector<std::size_t> ranks;

  static OrderPolicy canonical() { return {}; }
  static OrderPolicy explicit_order(std::vector<std::size_t> one_based_ranks) {
    return {Kind::Explicit, std::move(one_based_ranks)};
  }
};

/// Total order on the cells of a complex, compatible with faces and grey values.
class Filtration {
public:
  Filtration() = default;

  const CubicalComplex& complex() const { return complex_; }
  std::size_t size() const { return cell_at_.size(); }

  Rank rank(CellIndex cell) const { return rank_of_[cell]; }
  CellIndex cell(Rank r) const { return cell_at_[r]; }

  double value_at(Rank r) const { return complex_.value(cell_at_[r]); }
  int dimension_at(Rank r) const { return complex_.dimension(cell_at_[r]); }

  const std::vector<Rank>& ranks() const { return rank_of_; }
  const std::vector<CellIndex>& order() const { return cell_at_; }

  /// The FCC matrix: 1-based rank per cell, row-major.
  std::vector<std::size_t> rank_matrix() const;

private:
  friend Filtration build_filtration(CubicalComplex cc, const OrderPolicy& policy);
  friend Filtration make_filtration(CubicalComplex cc, std::vector<CellIndex> order);

  CubicalComplex complex_;
  std::vector<Rank> rank_of_;
  std::vector<CellIndex> cell_at_;
};

/// Orders the cells of `cc`. Canonical sorts by (value, dimension, cell
/// index). Explicit validates the caller's ranks and throws
/// InvalidOrderError naming the violating pair.
Filtration build_filtration(CubicalComplex cc, const OrderPolicy& policy = {});

/// Filtration from a cell sequence (first element gets rank 0), validated
/// like an Explicit policy.
Filtration make_filtration(CubicalComplex cc, std::vector<CellIndex> order);

/// Checks both filtration conditions for a cell sequence and throws
/// InvalidOrderError on the first violation.
void validate_order(const CubicalComplex& cc, const std::vector<CellIndex>& order);

} // namespace cubiph
