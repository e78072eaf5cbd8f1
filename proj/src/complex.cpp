#include "cubiph/complex.hpp"

#include "cubiph/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cubiph {

namespace {

std::string describe(const CubicalComplex& cc, CellIndex cell) {
  const std::size_t r = cell / cc.cols();
  const std::size_t c = cell % cc.cols();
  return "cell (" + std::to_string(r) + "," + std::to_string(c) + ") dim " +
         std::to_string(cc.dimension(cell)) + " value " + std::to_string(cc.value(cell));
}

} // namespace

CubicalComplex::CubicalComplex(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ == 0 || cols_ == 0 || rows_ % 2 == 0 || cols_ % 2 == 0)
    throw DomainError("cubical complex: grid must have odd, nonzero dimensions");
  if (values_.size() != rows_ * cols_)
    throw DomainError("cubical complex: value count does not match grid");
}

std::size_t CubicalComplex::faces(CellIndex cell, CellIndex (&out)[4]) const {
  const std::size_t r = cell / cols_;
  const std::size_t c = cell % cols_;
  std::size_t n = 0;
  if (r % 2 == 1) {
    out[n++] = static_cast<CellIndex>(cell - cols_);
    out[n++] = static_cast<CellIndex>(cell + cols_);
  }
  if (c % 2 == 1) {
    out[n++] = cell - 1;
    out[n++] = cell + 1;
  }
  return n;
}

std::size_t CubicalComplex::count_of_dimension(int dim) const {
  const std::size_t even_r = (rows_ + 1) / 2, odd_r = rows_ / 2;
  const std::size_t even_c = (cols_ + 1) / 2, odd_c = cols_ / 2;
  switch (dim) {
  case 0: return even_r * even_c;
  case 1: return even_r * odd_c + odd_r * even_c;
  case 2: return odd_r * odd_c;
  default: return 0;
  }
}

CubicalComplex build_cubical_complex(const GreyImage& img) {
  if (img.width() == 0 || img.height() == 0)
    throw DomainError("cannot build a cubical complex from an empty image");
  const std::size_t rows = 2 * img.height() - 1;
  const std::size_t cols = 2 * img.width() - 1;
  std::vector<double> values(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      // Pixels in the closure span rows [i/2, (i+1)/2] and cols [j/2, (j+1)/2].
      const std::size_t r0 = i / 2, r1 = (i + 1) / 2;
      const std::size_t c0 = j / 2, c1 = (j + 1) / 2;
      values[i * cols + j] = std::max({img.at(r0, c0), img.at(r0, c1), img.at(r1, c0), img.at(r1, c1)});
    }
  }
  return CubicalComplex(rows, cols, std::move(values));
}

void validate_order(const CubicalComplex& cc, const std::vector<CellIndex>& order) {
  const std::size_t n = cc.size();
  if (order.size() != n)
    throw InvalidOrderError("order lists " + std::to_string(order.size()) + " cells, complex has " +
                            std::to_string(n));
  std::vector<Rank> rank(n, static_cast<Rank>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const CellIndex cell = order[k];
    if (cell >= n)
      throw InvalidOrderError("order names cell index " + std::to_string(cell) + " out of range");
    if (rank[cell] != n)
      throw InvalidOrderError("order lists " + describe(cc, cell) + " twice");
    rank[cell] = static_cast<Rank>(k);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (cc.value(order[k]) > cc.value(order[k + 1]))
      throw InvalidOrderError("grey values decrease: " + describe(cc, order[k]) + " at rank " +
                              std::to_string(k + 1) + " precedes " + describe(cc, order[k + 1]) +
                              " at rank " + std::to_string(k + 2));
  }
  CellIndex faces[4];
  for (CellIndex cell = 0; cell < n; ++cell) {
    const std::size_t nf = cc.faces(cell, faces);
    for (std::size_t f = 0; f < nf; ++f) {
      if (rank[faces[f]] > rank[cell])
        throw InvalidOrderError("face appears after its coface: " + describe(cc, faces[f]) +
                                " at rank " + std::to_string(rank[faces[f]] + 1) + " follows " +
                                describe(cc, cell) + " at rank " + std::to_string(rank[cell] + 1));
    }
  }
}

Filtration make_filtration(CubicalComplex cc, std::vector<CellIndex> order) {
  validate_order(cc, order);
  Filtration f;
  f.rank_of_.resize(order.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    f.rank_of_[order[k]] = static_cast<Rank>(k);
  f.cell_at_ = std::move(order);
  f.complex_ = std::move(cc);
  return f;
}

Filtration build_filtration(CubicalComplex cc, const OrderPolicy& policy) {
  const std::size_t n = cc.size();
  if (policy.kind == OrderPolicy::Kind::Explicit) {
    if (policy.ranks.size() != n)
      throw InvalidOrderError("explicit order has " + std::to_string(policy.ranks.size()) +
                              " entries, complex has " + std::to_string(n) + " cells");
    std::vector<CellIndex> order(n, static_cast<CellIndex>(n));
    for (CellIndex cell = 0; cell < n; ++cell) {
      const std::size_t r = policy.ranks[cell];
      if (r < 1 || r > n)
        throw InvalidOrderError("explicit rank " + std::to_string(r) + " of " + describe(cc, cell) +
                                " is outside 1.." + std::to_string(n));
      if (order[r - 1] != n)
        throw InvalidOrderError("explicit rank " + std::to_string(r) + " is assigned twice");
      order[r - 1] = cell;
    }
    return make_filtration(std::move(cc), std::move(order));
  }

  std::vector<CellIndex> order(n);
  std::iota(order.begin(), order.end(), CellIndex{0});
  std::sort(order.begin(), order.end(), [&cc](CellIndex a, CellIndex b) {
    const double va = cc.value(a), vb = cc.value(b);
    if (va != vb)
      return va < vb;
    const int da = cc.dimension(a), db = cc.dimension(b);
    if (da != db)
      return da < db;
    return a < b;
  });
  // The sort key already implies both conditions: a face never exceeds its
  // coface in value and has strictly lower dimension.
  Filtration f;
  f.rank_of_.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    f.rank_of_[order[k]] = static_cast<Rank>(k);
  f.cell_at_ = std::move(order);
  f.complex_ = std::move(cc);
  return f;
}

std::vector<std::size_t> Filtration::rank_matrix() const {
  std::vector<std::size_t> m(rank_of_.size());
  for (std::size_t c = 0; c < m.size(); ++c)
    m[c] = std::size_t{rank_of_[c]} + 1;
  return m;
}

} // namespace cubiph
