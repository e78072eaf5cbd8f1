#pragma once

#include "cubiph/complex.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cubiph {

/// Sparse GF(2) boundary matrix in filtration order, stored column-wise.
///
/// Column j lists, ascending, the ranks of the codimension-1 faces of the
/// cell with rank j. Ranks are 0-based.
class BoundaryMatrix {
public:
  BoundaryMatrix() = default;
  BoundaryMatrix(std::vector<std::size_t> offsets, std::vector<Rank> entries,
                 std::vector<double> birth_value, std::vector<int> cell_dim);

  std::size_t size() const { return birth_value_.size(); }
  std::size_t nonzeros() const { return entries_.size(); }

  std::span<const Rank> column(Rank j) const {
    return {entries_.data() + offsets_[j], offsets_[j + 1] - offsets_[j]};
  }
  double birth_value(Rank j) const { return birth_value_[j]; }
  int cell_dim(Rank j) const { return cell_dim_[j]; }

  bool entry(Rank i, Rank j) const;

  /// Row-major dense 0/1 copy, for fixtures and debugging only.
  std::vector<int> dense() const;

  /// Same incidence with every (i,j) swapped to (j,i). Not a boundary matrix
  /// any more (lower-triangular) but handy for symmetry checks.
  BoundaryMatrix transposed() const;

private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Rank> entries_;
  std::vector<double> birth_value_;
  std::vector<int> cell_dim_;
};

BoundaryMatrix build_boundary_matrix(const Filtration& f);

struct GraphEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  double weight = 0.0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct NodeFeature {
  int dimension = 0;
  double grey_value = 0.0;
  std::size_t rank = 0; ///< 1-based filtration rank

  friend bool operator==(const NodeFeature&, const NodeFeature&) = default;
};

/// Graph encoding of a cell complex for graph-learning consumers.
struct CellGraph {
  std::size_t n = 0;
  std::vector<GraphEdge> edges;
  std::vector<NodeFeature> node_features;

  /// Number of edges touching `node`, self-loops counted once.
  std::size_t degree(std::size_t node) const;
};

/// Undirected graph of B + B^T: edge {i,j} (i<j) with weight 1 for every
/// face relation. Node ids are filtration ranks.
CellGraph symmetrize(const BoundaryMatrix& b);

/// Directed weighted graph whose adjacency matrix is the CC value grid:
/// edge i -> j carries CC(i,j). A (2h-1)x(2w-1) grid yields max(2h-1, 2w-1)
/// nodes; non-square grids are padded with zeros. Zero entries produce no edge.
CellGraph export_cc_graph(const CubicalComplex& cc);

/// Dense weighted graph with A(i,j) = E_flat(F(i,j)), E_flat the row-major
/// flattening of the CC values (1-based as in the printed matrices) and F the
/// rank matrix. Same node layout as export_cc_graph.
CellGraph export_fcc_graph(const CubicalComplex& cc, const Filtration& f);

/// Row-major dense adjacency of an FCC graph, including zero entries.
std::vector<double> fcc_adjacency(const CubicalComplex& cc, const Filtration& f);

/// Attaches (dimension, grey value, 1-based rank) to every node of a
/// symmetrized boundary graph, whose nodes are cells in filtration order.
void attach_rank_node_features(CellGraph& g, const Filtration& f);

} // namespace cubiph
