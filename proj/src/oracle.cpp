#include "cubiph/oracle.hpp"

#include "cubiph/error.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace cubiph::oracle {

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b)
    return false;
  if (size_[a] < size_[b])
    std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

BettiCurves betti_curve_bruteforce(const GreyImage& img) {
  const std::size_t h = img.height(), w = img.width();
  BettiCurves curves;
  curves.thresholds = img.values();
  std::sort(curves.thresholds.begin(), curves.thresholds.end());
  curves.thresholds.erase(std::unique(curves.thresholds.begin(), curves.thresholds.end()),
                          curves.thresholds.end());

  for (double t : curves.thresholds) {
    auto in = [&](std::size_t r, std::size_t c) { return img.at(r, c) <= t; };
    UnionFind uf(h * w);
    long vertices = 0, edges = 0, squares = 0, merges = 0;
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t c = 0; c < w; ++c) {
        if (!in(r, c))
          continue;
        ++vertices;
        if (c + 1 < w && in(r, c + 1)) {
          ++edges;
          merges += uf.unite(r * w + c, r * w + c + 1) ? 1 : 0;
        }
        if (r + 1 < h && in(r + 1, c)) {
          ++edges;
          merges += uf.unite(r * w + c, (r + 1) * w + c) ? 1 : 0;
        }
        if (r + 1 < h && c + 1 < w && in(r, c + 1) && in(r + 1, c) && in(r + 1, c + 1))
          ++squares;
      }
    const long beta0 = vertices - merges;
    const long euler = vertices - edges + squares;
    curves.beta0.push_back(beta0);
    curves.beta1.push_back(beta0 - euler);
    curves.euler.push_back(euler);
  }
  return curves;
}

BettiCurves betti_curve_from_diagrams(const DiagramSet& d, std::span<const double> thresholds) {
  BettiCurves curves;
  curves.thresholds.assign(thresholds.begin(), thresholds.end());
  auto count = [](const std::vector<PersistencePair>& pts, double t) {
    long n = 0;
    for (const auto& p : pts)
      if (p.birth <= t && (p.essential() || t < p.death))
        ++n;
    return n;
  };
  for (double t : thresholds) {
    curves.beta0.push_back(count(d.h0, t));
    curves.beta1.push_back(count(d.h1, t));
  }
  return curves;
}

double tropical_bruteforce(std::span<const double> lengths, int k) {
  if (k < 1 || k > 4)
    throw OracleScopeError("tropical oracle: k must be in 1..4");
  if (lengths.size() > 20)
    throw OracleScopeError("tropical oracle: at most 20 lengths, got " +
                           std::to_string(lengths.size()));
  const std::size_t n = lengths.size();
  double best = 0.0;
  std::vector<double> chosen;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    if (std::popcount(mask) > k)
      continue;
    chosen.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint32_t{1} << i))
        chosen.push_back(lengths[i]);
    std::sort(chosen.begin(), chosen.end(), std::greater<>());
    double sum = 0.0;
    for (double v : chosen)
      sum += v;
    best = std::max(best, sum);
  }
  return best;
}

} // namespace cubiph::oracle

namespace cubiph::oracle {

GreyImage random_image(std::mt19937_64& rng, std::size_t height, std::size_t width, std::size_t levels) {
  std::vector<double> values(height * width, 0.0);
  if (levels > 1) {
    std::uniform_int_distribution<std::size_t> pick(0, levels - 1);
    for (double& v : values)
      v = static_cast<double>(pick(rng)) / static_cast<double>(levels - 1);
  }
  return GreyImage(width, height, std::move(values));
}

std::vector<CellIndex> random_valid_order(const CubicalComplex& cc, std::mt19937_64& rng) {
  const std::size_t n = cc.size();
  std::vector<CellIndex> by_value(n);
  std::iota(by_value.begin(), by_value.end(), CellIndex{0});
  std::stable_sort(by_value.begin(), by_value.end(),
                   [&cc](CellIndex a, CellIndex b) { return cc.value(a) < cc.value(b); });

  // Unplaced faces per cell; a cell is ready once all of its faces are placed.
  std::vector<int> missing(n, 0);
  std::vector<std::vector<CellIndex>> cofaces(n);
  CellIndex faces[4];
  for (CellIndex c = 0; c < n; ++c) {
    const std::size_t nf = cc.faces(c, faces);
    missing[c] = static_cast<int>(nf);
    for (std::size_t k = 0; k < nf; ++k)
      cofaces[faces[k]].push_back(c);
  }

  std::vector<CellIndex> order;
  order.reserve(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    const double level = cc.value(by_value[start]);
    while (end < n && cc.value(by_value[end]) == level)
      ++end;
    std::vector<char> in_level(n, 0);
    std::vector<CellIndex> ready;
    for (std::size_t k = start; k < end; ++k) {
      in_level[by_value[k]] = 1;
      if (missing[by_value[k]] == 0)
        ready.push_back(by_value[k]);
    }
    while (!ready.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
      const std::size_t k = pick(rng);
      const CellIndex c = ready[k];
      ready[k] = ready.back();
      ready.pop_back();
      order.push_back(c);
      for (CellIndex co : cofaces[c])
        if (--missing[co] == 0 && in_level[co])
          ready.push_back(co);
    }
    start = end;
  }
  if (order.size() != n)
    throw InternalError("random order: complex violates the max-of-faces rule");
  return order;
}

} // namespace cubiph::oracle
