#include "cubiph/features.hpp"

#include "cubiph/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <mutex>
#include <numeric>

namespace cubiph {

std::vector<DiagramPoint> select_points(const DiagramSet& d, DegreeSelection degree,
                                        EssentialPolicy essentials) {
  std::vector<DiagramPoint> pts;
  auto take = [&](const std::vector<PersistencePair>& src) {
    for (const auto& p : src) {
      if (!p.essential())
        pts.emplace_back(p.birth, p.death);
      else if (essentials == EssentialPolicy::CapAtOne)
        pts.emplace_back(p.birth, std::max(1.0, p.birth));
    }
  };
  if (degree != DegreeSelection::H1)
    take(d.h0);
  if (degree != DegreeSelection::H0)
    take(d.h1);
  return pts;
}

std::vector<double> bar_lengths(const DiagramSet& d, DegreeSelection degree,
                                EssentialPolicy essentials) {
  std::vector<double> lengths;
  for (const auto& [birth, death] : select_points(d, degree, essentials))
    lengths.push_back(death - birth);
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

double TropicalVector::t(int k) const {
  switch (k) {
  case 1: return t1;
  case 2: return t2;
  case 3: return t3;
  case 4: return t4;
  default: throw ParameterError("tropical coordinate index must be 1..4");
  }
}

TropicalVector tropical_coordinates(std::span<const double> lengths) {
  std::vector<double> sorted(lengths.begin(), lengths.end());
  if (!std::is_sorted(sorted.begin(), sorted.end(), std::greater<>()))
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

  double prefix[4] = {0.0, 0.0, 0.0, 0.0};
  double running = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (k < sorted.size())
      running += sorted[k];
    prefix[k] = running;
  }
  TropicalVector t{prefix[0], prefix[1], prefix[2], prefix[3], 0.0};
  if (!sorted.empty())
    t.mean_d = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());
  return t;
}

int binary_bar_feature(std::span<const double> lengths, BarMode mode, double theta, double floor) {
  if (mode == BarMode::Interval && floor > theta)
    throw ParameterError("interval bar feature: floor " + std::to_string(floor) +
                         " exceeds theta " + std::to_string(theta));
  for (double d : lengths) {
    if (mode == BarMode::AtLeast ? d >= theta : (d >= floor && d <= theta))
      return 1;
  }
  return 0;
}

void PIParams::validate() const {
  if (!(a > 0.0))
    throw ParameterError("persistence image: covariance scale a must be > 0");
  if (!(b > 0.0))
    throw ParameterError("persistence image: weight ceiling b must be > 0");
  if (resolution < 1)
    throw ParameterError("persistence image: resolution must be >= 1");
  if (!(birth_hi > birth_lo) || !(pers_hi > pers_lo))
    throw ParameterError("persistence image: empty grid bounds");
}

double PIParams::birth_node(std::size_t i) const {
  return birth_lo + (birth_hi - birth_lo) * static_cast<double>(i) / static_cast<double>(resolution);
}

double PIParams::pers_node(std::size_t j) const {
  return pers_lo + (pers_hi - pers_lo) * static_cast<double>(j) / static_cast<double>(resolution);
}

double PersistenceImage::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

double pi_weight(double persistence, double b) {
  if (persistence <= 0.0)
    return 0.0;
  if (persistence < b)
    return persistence / b;
  return 1.0;
}

namespace {

// Separable raster: value(i,j) = sum over points of w * gx[i] * gy[j].
template <typename AxisFn>
PersistenceImage rasterize(std::span<const DiagramPoint> points, const PIParams& p, PIMode mode,
                           double scale, AxisFn&& axis) {
  p.validate();
  const std::size_t n = p.resolution;
  PersistenceImage img{p, mode, std::vector<double>(n * n, 0.0)};
  std::vector<double> gx(n), gy(n);
  for (const auto& [birth, death] : points) {
    const double pers = death - birth;
    const double w = pi_weight(pers, p.b) * scale;
    if (w == 0.0)
      continue;
    axis(birth, p.birth_lo, p.birth_hi, gx);
    axis(pers, p.pers_lo, p.pers_hi, gy);
    for (std::size_t i = 0; i < n; ++i) {
      const double wx = w * gx[i];
      if (wx == 0.0)
        continue;
      double* row = img.values.data() + i * n;
      for (std::size_t j = 0; j < n; ++j)
        row[j] += wx * gy[j];
    }
  }
  return img;
}

// P(lo <= X < hi) for X ~ N(mu, sigma^2), computed on the tail side that
// avoids cancellation.
double normal_mass(double lo, double hi, double mu, double sigma) {
  const double s = sigma * std::numbers::sqrt2;
  const double zl = (lo - mu) / s;
  const double zh = (hi - mu) / s;
  if (zl >= 0.0)
    return 0.5 * (std::erfc(zl) - std::erfc(zh));
  if (zh <= 0.0)
    return 0.5 * (std::erfc(-zh) - std::erfc(-zl));
  return 1.0 - 0.5 * (std::erfc(zh) + std::erfc(-zl));
}

} // namespace

PersistenceImage persistence_image(std::span<const DiagramPoint> points, const PIParams& p) {
  const double sigma2 = p.a;
  // The 2D density factors as (1/(2 pi a)) exp(-dx^2/2a) exp(-dy^2/2a).
  const double norm = 1.0 / (2.0 * std::numbers::pi * p.a);
  return rasterize(points, p, PIMode::PointSampled, norm,
                   [&](double mu, double lo, double hi, std::vector<double>& g) {
                     const std::size_t n = g.size();
                     for (std::size_t k = 0; k < n; ++k) {
                       const double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n);
                       const double d = x - mu;
                       g[k] = std::exp(-d * d / (2.0 * sigma2));
                     }
                   });
}

PersistenceImage persistence_image_averaged(std::span<const DiagramPoint> points, const PIParams& p) {
  const double sigma = std::sqrt(p.a);
  return rasterize(points, p, PIMode::CellAveraged, 1.0,
                   [&](double mu, double lo, double hi, std::vector<double>& g) {
                     const std::size_t n = g.size();
                     const double width = (hi - lo) / static_cast<double>(n);
                     double left = lo;
                     for (std::size_t k = 0; k < n; ++k) {
                       const double right =
                           lo + (hi - lo) * static_cast<double>(k + 1) / static_cast<double>(n);
                       g[k] = normal_mass(left, right, mu, sigma) / width;
                       left = right;
                     }
                   });
}

PersistenceImage persistence_image(const DiagramSet& d, DegreeSelection degree, const PIParams& p,
                                   EssentialPolicy essentials) {
  const auto pts = select_points(d, degree, essentials);
  return persistence_image(pts, p);
}

PersistenceImage persistence_image_averaged(const DiagramSet& d, DegreeSelection degree,
                                            const PIParams& p, EssentialPolicy essentials) {
  const auto pts = select_points(d, degree, essentials);
  return persistence_image_averaged(pts, p);
}

ComplexGrid fourier_coefficients(const PersistenceImage& pi) {
  using cd = std::complex<double>;
  const std::size_t n = pi.n();
  ComplexGrid out{n, std::vector<cd>(n * n)};
  if (n == 0)
    return out;
  const std::size_t half = n / 2 + 1;
  std::vector<double> in(pi.values);
  std::vector<fftw_complex> spectrum(n * half);

  // the FFTW planner is not reentrant; execution is
  static std::mutex planner;
  fftw_plan plan;
  {
    std::lock_guard lock(planner);
    plan = fftw_plan_dft_r2c_2d(static_cast<int>(n), static_cast<int>(n), in.data(), spectrum.data(),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner);
    fftw_destroy_plan(plan);
  }

  // r2c stores k2 <= n/2; the rest follows from phi(-k) = conj(phi(k)).
  for (std::size_t k1 = 0; k1 < n; ++k1)
    for (std::size_t k2 = 0; k2 < half; ++k2) {
      const auto& c = spectrum[k1 * half + k2];
      out.values[k1 * n + k2] = cd(c[0], c[1]);
    }
  for (std::size_t k1 = 0; k1 < n; ++k1)
    for (std::size_t k2 = half; k2 < n; ++k2)
      out.values[k1 * n + k2] = std::conj(out.values[((n - k1) % n) * n + (n - k2)]);
  // Columns 0 and n/2 (n even) pair with themselves, so r2c holds both
  // halves of them; mirror those too and zero the imaginary part of the
  // self-conjugate entries.
  std::vector<std::size_t> self_columns{0};
  if (n % 2 == 0 && n > 1)
    self_columns.push_back(n / 2);
  for (std::size_t k2 : self_columns) {
    for (std::size_t k1 = n / 2 + 1; k1 < n; ++k1)
      out.values[k1 * n + k2] = std::conj(out.values[(n - k1) * n + k2]);
    out.values[k2] = out.values[k2].real();
    if (n % 2 == 0)
      out.values[(n / 2) * n + k2] = out.values[(n / 2) * n + k2].real();
  }
  return out;
}

BlobSummary count_blobs(const PersistenceImage& pi, double epsilon) {
  if (epsilon < 0.0)
    throw ParameterError("blob threshold must be >= 0");
  const std::size_t n = pi.n();
  const std::size_t cells = n * n;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  constexpr std::size_t kPlateau = static_cast<std::size_t>(-2);

  // Steepest-ascent successor of each cell, or the cell itself at a local top.
  std::vector<std::size_t> next(cells);
  std::vector<char> strict_max(cells, 0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t idx = r * n + c;
      const double v = pi.values[idx];
      std::size_t best = kUnset;
      double best_v = 0.0;
      bool strict = true;
      // Row-major scan, so the first maximum seen has the smallest index.
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0)
            continue;
          const auto rr = static_cast<std::ptrdiff_t>(r) + dr;
          const auto cc = static_cast<std::ptrdiff_t>(c) + dc;
          if (rr < 0 || cc < 0 || rr >= static_cast<std::ptrdiff_t>(n) ||
              cc >= static_cast<std::ptrdiff_t>(n))
            continue;
          const std::size_t nb = static_cast<std::size_t>(rr) * n + static_cast<std::size_t>(cc);
          const double nv = pi.values[nb];
          if (nv >= v)
            strict = false;
          if (best == kUnset || nv > best_v) {
            best = nb;
            best_v = nv;
          }
        }
      next[idx] = (best != kUnset && best_v > v) ? best : idx;
      strict_max[idx] = strict ? 1 : 0;
    }

  BlobSummary summary;
  std::vector<std::size_t> blob_of(cells, kUnset);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    if (pi.values[idx] > epsilon && strict_max[idx]) {
      blob_of[idx] = summary.blobs.size();
      summary.blobs.push_back({idx / n, idx % n, pi.values[idx], 0.0});
    }
  }
  summary.count = summary.blobs.size();

  std::vector<std::size_t> path;
  for (std::size_t idx = 0; idx < cells; ++idx) {
    const double v = pi.values[idx];
    if (!(v > epsilon))
      continue;
    summary.total_mass += v;
    std::size_t cur = idx;
    path.clear();
    while (blob_of[cur] == kUnset && next[cur] != cur) {
      path.push_back(cur);
      cur = next[cur];
    }
    std::size_t dest = blob_of[cur];
    if (dest == kUnset)
      dest = kPlateau;
    for (std::size_t p : path)
      blob_of[p] = dest;
    if (dest == kPlateau)
      summary.unassigned_mass += v;
    else
      summary.blobs[dest].volume += v;
  }
  return summary;
}

ImageFeatures extract_features(const DiagramSet& d, const FeatureConfig& cfg, std::size_t image_id,
                               int class_label) {
  ImageFeatures out;
  const auto pts = select_points(d, cfg.degree, cfg.essentials);
  std::vector<double> lengths;
  lengths.reserve(pts.size());
  for (const auto& [birth, death] : pts)
    lengths.push_back(death - birth);
  std::sort(lengths.begin(), lengths.end(), std::greater<>());

  FeatureRecord& rec = out.record;
  rec.image_id = image_id;
  rec.class_label = class_label;
  rec.binary.reserve(cfg.theta_grid.size());
  for (double theta : cfg.theta_grid)
    rec.binary.push_back(binary_bar_feature(lengths, cfg.mode, theta, cfg.floor));
  rec.tropical = tropical_coordinates(lengths);
  rec.n_bars = lengths.size();
  rec.total_length = std::accumulate(lengths.begin(), lengths.end(), 0.0);

  out.pi = persistence_image(pts, cfg.pi);
  out.pi_averaged = persistence_image_averaged(pts, cfg.pi);
  out.fourier = fourier_coefficients(out.pi);
  out.blobs = count_blobs(out.pi, cfg.blob_epsilon);
  rec.blob_count = out.blobs.count;
  return out;
}

} // namespace cubiph
