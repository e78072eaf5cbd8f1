// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "cubiph/boundary.hpp"
#include "cubiph/cli.hpp"
#include "cubiph/features.hpp"
#include "cubiph/io.hpp"
#include "cubiph/oracle.hpp"
#include "cubiph/reduce.hpp"
#include "cubiph/stats.hpp"
#include "fixtures.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

using namespace cubiph;
namespace fs = std::filesystem;

namespace {

using PiFn = PersistenceImage (*)(std::span<const DiagramPoint>, const PIParams&);

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(const std::string& name, const std::function<Outcome()>& body) {
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  std::cout << (r.ok ? "PASS" : "FAIL") << "  " << name << "  (" << r.detail << ")" << std::endl;
  if (!r.ok)
    ++failures;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

std::vector<DiagramPoint> random_points(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<DiagramPoint> pts;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = u(rng), b = u(rng);
    pts.emplace_back(std::min(a, b), std::max(a, b));
  }
  return pts;
}

// Stroke-like 28x28 image with 256 grey levels: a dark digit on a bright background.
GreyImage synthetic_digit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(28 * 28, 1.0);
  const int strokes = 2 + static_cast<int>(rng() % 3);
  for (int s = 0; s < strokes; ++s) {
    double x = 6 + 16 * u(rng), y = 6 + 16 * u(rng);
    const double dx = u(rng) - 0.5, dy = u(rng) - 0.5;
    for (int step = 0; step < 30; ++step) {
      x = std::clamp(x + dx + 0.3 * (u(rng) - 0.5), 1.0, 26.0);
      y = std::clamp(y + dy + 0.3 * (u(rng) - 0.5), 1.0, 26.0);
      for (int r = 0; r < 28; ++r)
        for (int c = 0; c < 28; ++c) {
          const double d2 = (r - y) * (r - y) + (c - x) * (c - x);
          v[r * 28 + c] = std::min(v[r * 28 + c], 1.0 - std::exp(-d2 / 2.0));
        }
    }
  }
  for (double& p : v)
    p = std::round(p * 255.0) / 255.0;
  return GreyImage(28, 28, std::move(v));
}

Outcome golden_example() {
  const auto t0 = Clock::now();
  const Filtration f = fixtures::example_filtration();
  const BoundaryMatrix b = build_boundary_matrix(f);
  const double elapsed = seconds_since(t0);

  const auto& cc = f.complex();
  bool ok = cc.values() == fixtures::kExampleCC;
  const auto ranks = f.rank_matrix();
  ok = ok && std::equal(ranks.begin(), ranks.end(), fixtures::kExampleOrder.begin(), fixtures::kExampleOrder.end());
  const auto dense = b.dense();
  ok = ok && std::equal(dense.begin(), dense.end(), fixtures::kExampleB.begin(), fixtures::kExampleB.end(),
                        [](auto x, int y) { return static_cast<int>(x) == y; });
  return {ok && elapsed < 1e-3, "CC/FCC/B exact=" + std::string(ok ? "yes" : "no") + ", " + fmt(elapsed * 1e3) +
                                    " ms"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(1);
  const auto t0 = Clock::now();
  std::size_t good = 0;
  const std::size_t total = 1000;
  for (std::size_t k = 0; k < total; ++k) {
    const auto img = oracle::random_image(rng, 1 + rng() % 8, 1 + rng() % 8, 4);
    const auto truth = oracle::betti_curve_bruteforce(img);
    good += truth == oracle::betti_curve_from_diagrams(compute_ph(img), truth.thresholds);
  }
  const double elapsed = seconds_since(t0);
  return {good == total && elapsed < 30.0,
          std::to_string(good) + "/" + std::to_string(total) + " images, " + fmt(elapsed) + " s"};
}

Outcome order_invariance() {
  std::mt19937_64 rng(2);
  std::size_t good = 0;
  const std::size_t total = 200;
  for (std::size_t k = 0; k < total; ++k) {
    const auto img = oracle::random_image(rng, 1 + rng() % 6, 1 + rng() % 6, 1 + rng() % 4);
    const auto cc = build_cubical_complex(img);
    const auto canonical = compute_ph(build_filtration(cc));
    const auto shuffled = compute_ph(make_filtration(cc, oracle::random_valid_order(cc, rng)));
    good += diagram_points(canonical, 0) == diagram_points(shuffled, 0) &&
            diagram_points(canonical, 1) == diagram_points(shuffled, 1);
  }
  return {good == total, std::to_string(good) + "/" + std::to_string(total) + " images"};
}

Outcome tropical_oracle() {
  std::mt19937_64 rng(3);
  std::size_t good = 0;
  const std::size_t total = 1000;
  for (std::size_t k = 0; k < total; ++k) {
    DiagramSet d;
    for (const auto& [b, e] : random_points(rng, rng() % 13))
      d.h1.push_back(PersistencePair{0, 1, b, e, 1});
    const auto lengths = bar_lengths(d, DegreeSelection::H1);
    const auto t = tropical_coordinates(lengths);
    bool ok = t.t1 <= t.t2 && t.t2 <= t.t3 && t.t3 <= t.t4;
    for (int j = 1; j <= 4; ++j)
      ok = ok && t.t(j) == oracle::tropical_bruteforce(lengths, j);
    good += ok;
  }
  return {good == total, std::to_string(good) + "/" + std::to_string(total) + " diagrams"};
}

Outcome persistence_image_checks() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_mass = 0.0;
  for (int k = 0; k < 50; ++k) {
    PIParams p;
    p.resolution = 64;
    const double sigma = std::sqrt(p.a);
    const double birth = u(rng), pers = 0.2 * u(rng);
    p.birth_lo = birth - 6 * sigma;
    p.birth_hi = birth + 6 * sigma;
    p.pers_lo = pers - 6 * sigma;
    p.pers_hi = pers + 6 * sigma;
    const std::vector<DiagramPoint> pt{{birth, birth + pers}};
    const auto avg = persistence_image_averaged(pt, p);
    const double cell = (p.birth_hi - p.birth_lo) / 64 * (p.pers_hi - p.pers_lo) / 64;
    worst_mass = std::max(worst_mass, std::abs(avg.sum() * cell - pi_weight(pers, p.b)));
  }

  // Additivity is checked against the rounding bound of summing the
  // per-point contributions in a different order.
  double worst_add = 0.0;
  bool diagonal_zero = true;
  for (int k = 0; k < 100; ++k) {
    PIParams p;
    const auto a = random_points(rng, 1 + rng() % 8);
    const auto b = random_points(rng, 1 + rng() % 8);
    auto both = a;
    both.insert(both.end(), b.begin(), b.end());
    auto with_diag = a;
    for (std::size_t j = 0; j < 4; ++j) {
      const double x = u(rng);
      with_diag.emplace_back(x, x);
    }
    const double eps = std::numeric_limits<double>::epsilon() * static_cast<double>(both.size());
    for (PiFn fn : {PiFn(&persistence_image), PiFn(&persistence_image_averaged)}) {
      const auto pa = fn(a, p), pb = fn(b, p), pab = fn(both, p), pd = fn(with_diag, p);
      for (std::size_t j = 0; j < pab.values.size(); ++j) {
        const double scale = std::abs(pa.values[j]) + std::abs(pb.values[j]);
        const double err = std::abs(pab.values[j] - pa.values[j] - pb.values[j]);
        if (err > 0.0)
          worst_add = std::max(worst_add, err / (eps * scale));
        diagonal_zero = diagonal_zero && pd.values[j] == pa.values[j];
      }
    }
  }
  return {worst_mass <= 1e-6 && worst_add <= 1.0 && diagonal_zero,
          "max mass error " + fmt(worst_mass) + ", additivity within " + fmt(worst_add) +
              " of the rounding bound, diagonal points contribute " + (diagonal_zero ? "0" : "nonzero")};
}

Outcome fourier_checks() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_dc = 0.0;
  bool symmetric = true;
  for (int k = 0; k < 100; ++k) {
    PersistenceImage img;
    if (k % 2 == 0) {
      img.params.resolution = 1 + rng() % 40;
      img.values.resize(img.n() * img.n());
      for (double& v : img.values)
        v = u(rng);
    } else {
      img = persistence_image(random_points(rng, 1 + rng() % 6), PIParams{});
    }
    const auto f = fourier_coefficients(img);
    long double direct = 0.0L, magnitude = 0.0L;
    for (double v : img.values) {
      direct += v;
      magnitude += std::abs(v);
    }
    const double dc_err = std::abs(f.at(0, 0) - std::complex<double>(static_cast<double>(direct), 0.0));
    worst_dc = std::max(worst_dc, dc_err / std::max(1.0, static_cast<double>(magnitude)));
    const std::size_t n = img.n();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        symmetric = symmetric && f.at((n - a) % n, (n - b) % n) == std::conj(f.at(a, b));
  }
  return {worst_dc <= 1e-12 && symmetric,
          "max DC error " + fmt(worst_dc) + " relative to sum|PI|, conjugate symmetry " +
              (symmetric ? "exact" : "broken")};
}

Outcome throughput() {
  std::mt19937_64 rng(6);
  std::vector<GreyImage> images;
  for (int k = 0; k < 1000; ++k)
    images.push_back(synthetic_digit(rng));
  FeatureConfig cfg;
  cfg.theta_grid = cli::mnist_theta_grid();
  const auto t0 = Clock::now();
  std::size_t bars = 0;
  for (const auto& img : images)
    bars += extract_features(compute_ph(img), cfg).record.n_bars;
  const double elapsed = seconds_since(t0);

  // bench report format on the first 100 images
  const fs::path dir = fs::temp_directory_path() / ("cubiph_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  {
    std::ofstream csv(dir / "digits.csv");
    for (std::size_t k = 0; k < 100; ++k) {
      for (std::size_t r = 0; r < 28; ++r) {
        for (std::size_t c = 0; c < 28; ++c)
          csv << (c ? "," : "") << format_double(images[k].at(r, c));
        csv << '\n';
      }
      csv << '\n';
    }
  }
  const std::string data = (dir / "digits.csv").string(), out_dir = (dir / "out").string();
  const char* argv[] = {"cubiph", "--dataset", data.c_str(), "--out", out_dir.c_str(), "bench"};
  std::ostringstream out, err;
  const int code = cli::run(6, argv, out, err);
  fs::remove_all(dir);
  const std::string report = out.str();
  bool format_ok = code == 0;
  for (const char* needle : {"average time per image: ", "average time per batch of 100: ", "\nph,",
                             "\ntotal,", "stage,mean_per_image_s,median_s,p95_s,batch100_s"})
    format_ok = format_ok && report.find(needle) != std::string::npos;

  return {elapsed < 60.0 && format_ok && bars > 0,
          "1000 images in " + fmt(elapsed) + " s, bench report " + (format_ok ? "ok" : "malformed")};
}

Outcome stats_round_trip() {
  std::mt19937_64 rng(7);
  FeatureConfig cfg;
  cfg.theta_grid = cli::mnist_theta_grid();
  std::size_t checked = 0;
  bool ok = true;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<DiagramSet> ds;
    std::vector<int> labels;
    std::vector<FeatureRecord> records;
    const std::size_t count = rng() % 80;
    for (std::size_t i = 0; i < count; ++i) {
      ds.push_back(compute_ph(oracle::random_image(rng, 2 + rng() % 7, 2 + rng() % 7, 2 + rng() % 8)));
      labels.push_back(static_cast<int>(rng() % 10));
      records.push_back(extract_features(ds.back(), cfg, i, labels.back()).record);
    }
    std::stringstream csv;
    write_feature_header(csv, cfg.theta_grid);
    for (const auto& r : records)
      write_feature_row(csv, r);
    const auto table = read_feature_csv(csv);
    for (std::size_t k = 0; k < cfg.theta_grid.size(); ++k) {
      const std::size_t bin = 1 + rng() % 3;
      StatsOptions opts;
      opts.bin_width = bin;
      const auto direct = compute_stats(ds, labels, cfg.theta_grid[k], cfg.mode, opts);
      check_stats_identities(direct);
      const auto again = aggregate_stats(summaries_from_records(table.records, k), bin);
      check_stats_identities(again);
      ok = ok && again == direct;
      ++checked;
    }
  }
  return {ok, std::to_string(checked) + " dataset/theta combinations, identities hold, round trip " +
                  (ok ? "exact" : "differs")};
}

} // namespace

int main() {
  criterion("golden example: CC, FCC and boundary matrix bit-exact, < 1 ms", golden_example);
  criterion("oracle equivalence: 1000 random images up to 8x8, 4 levels, < 30 s", oracle_equivalence);
  criterion("order invariance: 200 random images, canonical vs random valid order", order_invariance);
  criterion("tropical oracle: 1000 diagrams of <= 12 points, chain t1<=t2<=t3<=t4", tropical_oracle);
  criterion("persistence image: mass within 1e-6, additivity, diagonal vanishing", persistence_image_checks);
  criterion("fourier: DC equals image sum to 1e-12, conjugate symmetry", fourier_checks);
  criterion("throughput: 1000 28x28 images through the full pipeline < 60 s, bench format", throughput);
  criterion("stats: sum identities and exact export/recompute round trip", stats_round_trip);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
