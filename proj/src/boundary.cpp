#include "cubiph/boundary.hpp"

#include "cubiph/error.hpp"

#include <algorithm>

namespace cubiph {

BoundaryMatrix::BoundaryMatrix(std::vector<std::size_t> offsets, std::vector<Rank> entries,
                               std::vector<double> birth_value, std::vector<int> cell_dim)
    : offsets_(std::move(offsets)), entries_(std::move(entries)),
      birth_value_(std::move(birth_value)), cell_dim_(std::move(cell_dim)) {
  if (offsets_.size() != birth_value_.size() + 1 || cell_dim_.size() != birth_value_.size() ||
      offsets_.back() != entries_.size())
    throw InternalError("boundary matrix: inconsistent storage");
}

bool BoundaryMatrix::entry(Rank i, Rank j) const {
  const auto col = column(j);
  return std::binary_search(col.begin(), col.end(), i);
}

std::vector<int> BoundaryMatrix::dense() const {
  const std::size_t n = size();
  std::vector<int> m(n * n, 0);
  for (Rank j = 0; j < n; ++j)
    for (Rank i : column(j))
      m[std::size_t{i} * n + j] = 1;
  return m;
}

BoundaryMatrix BoundaryMatrix::transposed() const {
  const std::size_t n = size();
  std::vector<std::size_t> counts(n + 1, 0);
  for (Rank i : entries_)
    ++counts[i + 1];
  for (std::size_t k = 0; k < n; ++k)
    counts[k + 1] += counts[k];
  std::vector<Rank> entries(entries_.size());
  std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
  for (Rank j = 0; j < n; ++j)
    for (Rank i : column(j))
      entries[fill[i]++] = j;
  return BoundaryMatrix(std::move(counts), std::move(entries), birth_value_, cell_dim_);
}

BoundaryMatrix build_boundary_matrix(const Filtration& f) {
  const CubicalComplex& cc = f.complex();
  const std::size_t n = f.size();
  std::vector<std::size_t> offsets;
  offsets.reserve(n + 1);
  offsets.push_back(0);
  std::vector<Rank> entries;
  entries.reserve(2 * cc.count_of_dimension(1) + 4 * cc.count_of_dimension(2));
  std::vector<double> birth(n);
  std::vector<int> dims(n);

  CellIndex faces[4];
  for (Rank j = 0; j < n; ++j) {
    const CellIndex cell = f.cell(j);
    birth[j] = cc.value(cell);
    dims[j] = cc.dimension(cell);
    const std::size_t nf = cc.faces(cell, faces);
    const auto first = entries.size();
    for (std::size_t k = 0; k < nf; ++k)
      entries.push_back(f.rank(faces[k]));
    std::sort(entries.begin() + static_cast<std::ptrdiff_t>(first), entries.end());
    offsets.push_back(entries.size());
  }
  return BoundaryMatrix(std::move(offsets), std::move(entries), std::move(birth), std::move(dims));
}

std::size_t CellGraph::degree(std::size_t node) const {
  return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [node](const GraphEdge& e) {
    return e.src == node || e.dst == node;
  }));
}

CellGraph symmetrize(const BoundaryMatrix& b) {
  CellGraph g;
  g.n = b.size();
  for (Rank j = 0; j < b.size(); ++j)
    for (Rank i : b.column(j)) {
      if (i == j)
        continue;
      g.edges.push_back({std::min(i, j), std::max(i, j), 1.0});
    }
  std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& a, const GraphEdge& c) {
    return a.src != c.src ? a.src < c.src : a.dst < c.dst;
  });
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

namespace {

// Square grid of weights -> directed weighted edges (row i -> column j).
CellGraph dense_graph(const std::vector<double>& weights, std::size_t side) {
  CellGraph g;
  g.n = side;
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) {
      const double w = weights[i * side + j];
      if (w != 0.0)
        g.edges.push_back({i, j, w});
    }
  return g;
}

} // namespace

// The CC matrix is (2h-1)x(2w-1), so the adjacency matrix interpretation
// needs a square grid; non-square complexes are padded with zero weights.
CellGraph export_cc_graph(const CubicalComplex& cc) {
  const std::size_t side = std::max(cc.rows(), cc.cols());
  std::vector<double> weights(side * side, 0.0);
  for (std::size_t i = 0; i < cc.rows(); ++i)
    for (std::size_t j = 0; j < cc.cols(); ++j)
      weights[i * side + j] = cc.value(i, j);
  return dense_graph(weights, side);
}

std::vector<double> fcc_adjacency(const CubicalComplex& cc, const Filtration& f) {
  const std::size_t n = cc.size();
  if (f.size() != n)
    throw InternalError("fcc export: filtration does not belong to this complex");
  std::vector<double> a(n);
  const auto ranks = f.rank_matrix();
  for (std::size_t cell = 0; cell < n; ++cell) {
    const std::size_t r = ranks[cell];
    if (r < 1 || r > n)
      throw InternalError("fcc export: rank " + std::to_string(r) + " out of range");
    a[cell] = cc.values()[r - 1];
  }
  return a;
}

CellGraph export_fcc_graph(const CubicalComplex& cc, const Filtration& f) {
  const auto a = fcc_adjacency(cc, f);
  const std::size_t side = std::max(cc.rows(), cc.cols());
  std::vector<double> weights(side * side, 0.0);
  for (std::size_t i = 0; i < cc.rows(); ++i)
    for (std::size_t j = 0; j < cc.cols(); ++j)
      weights[i * side + j] = a[i * cc.cols() + j];
  return dense_graph(weights, side);
}

void attach_rank_node_features(CellGraph& g, const Filtration& f) {
  g.node_features.resize(g.n);
  for (Rank r = 0; r < g.n; ++r)
    g.node_features[r] = {f.dimension_at(r), f.value_at(r), std::size_t{r} + 1};
}

} // namespace cubiph
