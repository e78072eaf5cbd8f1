#include "cubiph/reduce.hpp"

#include "cubiph/error.hpp"

#include <algorithm>
#include <iterator>

namespace cubiph {

namespace {

constexpr Rank kNone = std::numeric_limits<Rank>::max();

// target ^= source over GF(2); both sorted ascending.
void add_column(std::vector<Rank>& target, const std::vector<Rank>& source, std::vector<Rank>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

} // namespace

ReductionResult reduce_matrix(const BoundaryMatrix& b, ReduceOptions options) {
  const std::size_t n = b.size();
  ReductionResult result;
  auto& cols = result.reduced;
  cols.resize(n);
  for (Rank j = 0; j < n; ++j) {
    const auto c = b.column(j);
    cols[j].assign(c.begin(), c.end());
  }

  // pivot_of[i] = column whose lowest entry is i.
  std::vector<Rank> pivot_of(n, kNone);
  std::vector<Rank> scratch;

  auto reduce_column = [&](Rank j) {
    auto& col = cols[j];
    while (!col.empty()) {
      const Rank pivot = pivot_of[col.back()];
      if (pivot == kNone)
        break;
      add_column(col, cols[pivot], scratch);
    }
    if (!col.empty())
      pivot_of[col.back()] = j;
  };

  if (options.clearing) {
    int max_dim = 0;
    for (Rank j = 0; j < n; ++j)
      max_dim = std::max(max_dim, b.cell_dim(j));
    // Columns only interact with columns of the same dimension, so reducing
    // dimension by dimension from the top is the same reduction.
    for (int dim = max_dim; dim >= 1; --dim) {
      for (Rank j = 0; j < n; ++j) {
        if (b.cell_dim(j) != dim)
          continue;
        if (pivot_of[j] != kNone) {
          cols[j].clear();
          continue;
        }
        reduce_column(j);
      }
    }
  } else {
    for (Rank j = 0; j < n; ++j)
      reduce_column(j);
  }

  auto& pairing = result.pairing;
  for (Rank j = 0; j < n; ++j) {
    if (!cols[j].empty())
      pairing.pairs.emplace_back(cols[j].back(), j);
  }
  for (Rank j = 0; j < n; ++j) {
    if (cols[j].empty() && pivot_of[j] == kNone)
      pairing.essential.push_back(j);
  }
  return result;
}

DiagramSet extract_diagrams(const Pairing& pairing, const Filtration& f, bool drop_zero) {
  DiagramSet d;
  d.drop_zero = drop_zero;
  auto sink = [&d](int degree) -> std::vector<PersistencePair>& {
    if (degree == 0)
      return d.h0;
    if (degree == 1)
      return d.h1;
    throw InternalError("persistence class in degree " + std::to_string(degree) +
                        " cannot occur in a planar cubical complex");
  };

  for (const auto& [birth, death] : pairing.pairs) {
    const int degree = f.dimension_at(birth);
    if (f.dimension_at(death) != degree + 1)
      throw InternalError("paired cells do not differ by one dimension");
    PersistencePair p{birth, death, f.value_at(birth), f.value_at(death), degree};
    if (drop_zero && !(p.death > p.birth))
      continue;
    sink(degree).push_back(p);
  }
  for (Rank r : pairing.essential) {
    const int degree = f.dimension_at(r);
    sink(degree).push_back(PersistencePair{r, std::nullopt, f.value_at(r), kInfinity, degree});
  }
  return d;
}

DiagramSet compute_ph(const Filtration& f, const PhConfig& cfg) {
  const BoundaryMatrix b = build_boundary_matrix(f);
  const ReductionResult r = reduce_matrix(b, ReduceOptions{cfg.clearing});
  return extract_diagrams(r.pairing, f, cfg.drop_zero);
}

DiagramSet compute_ph(const GreyImage& img, const PhConfig& cfg) {
  return compute_ph(build_filtration(build_cubical_complex(img)), cfg);
}

std::vector<std::pair<double, double>> diagram_points(const DiagramSet& d, int degree) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : d.degree(degree))
    pts.emplace_back(p.birth, p.death);
  std::sort(pts.begin(), pts.end());
  return pts;
}

} // namespace cubiph
