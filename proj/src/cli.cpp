#include "cubiph/cli.hpp"

#include "cubiph/boundary.hpp"
#include "cubiph/complex.hpp"
#include "cubiph/error.hpp"
#include "cubiph/io.hpp"
#include "cubiph/oracle.hpp"
#include "cubiph/parallel.hpp"
#include "cubiph/reduce.hpp"
#include "cubiph/stats.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace cubiph::cli {

std::vector<double> mnist_theta_grid() { return {0.15, 0.2, 0.25, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9, 1.0}; }

std::vector<double> cifar_theta_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 10; ++i)
    grid.push_back(0.15 + 0.4 * i / 9.0);
  grid.back() = 0.55;
  return grid;
}

namespace {

std::string image_name(std::size_t id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "img_%06zu", id);
  return buf;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

std::vector<double> parse_theta_grid(const std::string& text) {
  if (text == "mnist")
    return mnist_theta_grid();
  if (text == "cifar10")
    return cifar_theta_grid();
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    grid.push_back(parse_double(item));
  return grid;
}

void validate_config(const PipelineConfig& cfg) {
  const auto& grid = cfg.features.theta_grid;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0 && grid[k] <= 1.0))
      throw ParameterError("theta grid values must lie in [0,1]");
    if (k > 0 && !(grid[k] > grid[k - 1]))
      throw ParameterError("theta grid must be strictly increasing");
  }
  if (cfg.jobs < 1)
    throw ParameterError("--jobs must be >= 1");
  cfg.features.pi.validate();
}

LabeledDataset load(const PipelineConfig& cfg) {
  if (cfg.dataset.empty())
    throw ParameterError("--dataset is required");
  LabeledDataset ds = load_dataset(cfg.dataset, cfg.format, cfg.labels, cfg.grey);
  if (cfg.limit > 0 && ds.size() > cfg.limit) {
    ds.images.resize(cfg.limit);
    ds.class_labels.resize(cfg.limit);
  }
  return ds;
}

std::vector<DiagramSet> diagrams_of(const LabeledDataset& ds, const PipelineConfig& cfg) {
  const PhConfig ph{cfg.drop_zero, true};
  return parallel_map(ds.size(), cfg.jobs, [&](std::size_t i) { return compute_ph(ds.images[i], ph); });
}

int cmd_compute(const PipelineConfig& cfg, std::ostream& out) {
  const LabeledDataset ds = load(cfg);
  const auto diagrams = diagrams_of(ds, cfg);
  const auto dir = cfg.out / "diagrams";
  ensure_dir(dir);
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    auto file = open_output(dir / (image_name(i) + ".csv"));
    write_diagram_csv(file, diagrams[i]);
  }
  out << "compute: wrote " << diagrams.size() << " diagram files to " << dir.string() << '\n';
  return kSuccess;
}

std::vector<ImageFeatures> features_of(const LabeledDataset& ds, const PipelineConfig& cfg) {
  const PhConfig ph{cfg.drop_zero, true};
  return parallel_map(ds.size(), cfg.jobs, [&](std::size_t i) {
    return extract_features(compute_ph(ds.images[i], ph), cfg.features, i, ds.class_labels[i]);
  });
}

int cmd_features(const PipelineConfig& cfg, std::ostream& out) {
  if (cfg.pi_format != "csv" && cfg.pi_format != "bin")
    throw ParameterError("--pi-format must be csv or bin");
  const LabeledDataset ds = load(cfg);
  const auto feats = features_of(ds, cfg);
  const auto dir = cfg.out / "features";
  ensure_dir(dir);
  auto summary = open_output(cfg.out / "features.csv");
  summary << "image_id,class_label,t1,t2,t3,t4,mean_d,n_bars,total_length,blob_count,pi_mass\n";
  for (const auto& f : feats) {
    const auto& r = f.record;
    const auto& t = r.tropical;
    summary << r.image_id << ',' << r.class_label << ',' << format_double(t.t1) << ','
            << format_double(t.t2) << ',' << format_double(t.t3) << ',' << format_double(t.t4) << ','
            << format_double(t.mean_d) << ',' << r.n_bars << ',' << format_double(r.total_length) << ','
            << r.blob_count << ',' << format_double(f.pi.sum()) << '\n';

    const std::string stem = image_name(r.image_id);
    if (cfg.pi_format == "csv") {
      auto pi = open_output(dir / (stem + "_pi.csv"));
      write_pi_csv(pi, f.pi);
      auto avg = open_output(dir / (stem + "_pi_avg.csv"));
      write_pi_csv(avg, f.pi_averaged);
    } else {
      auto pi = open_output(dir / (stem + "_pi.bin"), true);
      write_pi_binary(pi, f.pi);
      auto avg = open_output(dir / (stem + "_pi_avg.bin"), true);
      write_pi_binary(avg, f.pi_averaged);
    }
    auto fourier = open_output(dir / (stem + "_fourier.csv"));
    write_fourier_csv(fourier, f.fourier);
    auto blobs = open_output(dir / (stem + "_blobs.csv"));
    blobs << "row,col,peak,volume\n";
    for (const auto& b : f.blobs.blobs)
      blobs << b.row << ',' << b.col << ',' << format_double(b.peak) << ',' << format_double(b.volume) << '\n';
  }
  out << "features: " << feats.size() << " images -> " << (cfg.out / "features.csv").string() << '\n';
  return kSuccess;
}

int cmd_labels(const PipelineConfig& cfg, std::ostream& out) {
  const LabeledDataset ds = load(cfg);
  const auto feats = features_of(ds, cfg);
  ensure_dir(cfg.out);
  const auto path = cfg.out / "labels.csv";
  auto file = open_output(path);
  write_feature_header(file, cfg.features.theta_grid);
  for (const auto& f : feats)
    write_feature_row(file, f.record);
  out << "labels: " << feats.size() << " rows -> " << path.string() << '\n';
  return kSuccess;
}

std::size_t theta_index(const std::vector<double>& grid, double theta) {
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (std::abs(grid[k] - theta) <= 1e-12)
      return k;
  throw ParameterError("theta " + format_double(theta) + " is not a column of the label file");
}

int cmd_stats(const PipelineConfig& cfg, std::ostream& out) {
  DatasetStats stats;
  if (!cfg.from_labels.empty()) {
    std::ifstream in(cfg.from_labels);
    if (!in)
      throw IoError("cannot open '" + cfg.from_labels.string() + "'");
    const FeatureTable table = read_feature_csv(in);
    const auto summaries =
        summaries_from_records(table.records, theta_index(table.theta_grid, cfg.stats_theta));
    stats = aggregate_stats(summaries, cfg.bin_width);
  } else {
    const LabeledDataset ds = load(cfg);
    const auto diagrams = diagrams_of(ds, cfg);
    const StatsOptions opts{cfg.features.degree, cfg.features.essentials, cfg.features.floor, cfg.bin_width};
    stats = compute_stats(diagrams, ds.class_labels, cfg.stats_theta, cfg.features.mode, opts);
  }
  check_stats_identities(stats);

  ensure_dir(cfg.out);
  {
    auto f = open_output(cfg.out / "histogram.csv");
    write_histogram_csv(f, stats);
  }
  {
    auto f = open_output(cfg.out / "histogram.dat");
    write_histogram_gnuplot(f, stats);
  }
  {
    auto f = open_output(cfg.out / "ph_classes.csv");
    write_ph_class_csv(f, stats);
  }
  {
    auto f = open_output(cfg.out / "crosstab.csv");
    write_crosstab_csv(f, stats);
  }
  out << "stats: " << stats.dataset_size << " images, PH class 0/1 = " << stats.ph_class_counts[0] << '/'
      << stats.ph_class_counts[1] << " at theta=" << format_double(cfg.stats_theta)
      << ", identities hold\n";
  return kSuccess;
}

int cmd_export_graph(const PipelineConfig& cfg, std::ostream& out) {
  const LabeledDataset ds = load(cfg);
  const auto dir = cfg.out / "graphs";
  ensure_dir(dir);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const Filtration f = build_filtration(build_cubical_complex(ds.images[i]));
    const CubicalComplex& cc = f.complex();
    const BoundaryMatrix b = build_boundary_matrix(f);
    const std::string stem = image_name(i);

    auto cc_file = open_output(dir / (stem + "_cc.txt"));
    write_edge_list(cc_file, export_cc_graph(cc));
    auto fcc_file = open_output(dir / (stem + "_fcc.txt"));
    write_edge_list(fcc_file, export_fcc_graph(cc, f));
    CellGraph sym = symmetrize(b);
    auto sym_file = open_output(dir / (stem + "_bsym.txt"));
    write_edge_list(sym_file, sym);
    if (cfg.node_features) {
      attach_rank_node_features(sym, f);
      auto nodes = open_output(dir / (stem + "_bsym_nodes.csv"));
      write_node_features_csv(nodes, sym);
    }
    if (cfg.matrices) {
      auto m = open_output(dir / (stem + "_cc.csv"));
      write_grid_csv(m, cc.values(), cc.rows(), cc.cols());
      auto r = open_output(dir / (stem + "_fcc.csv"));
      write_grid_csv(r, f.rank_matrix(), cc.rows(), cc.cols());
      auto t = open_output(dir / (stem + "_boundary.txt"));
      write_boundary_triplets(t, b);
    }
  }
  out << "export-graph: " << ds.size() << " images -> " << dir.string() << '\n';
  return kSuccess;
}

int cmd_verify(const PipelineConfig& cfg, std::ostream& out) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<GreyImage> images;
  if (!cfg.dataset.empty()) {
    const LabeledDataset ds = load(cfg);
    std::vector<std::size_t> idx(ds.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<std::size_t> picked;
    std::sample(idx.begin(), idx.end(), std::back_inserter(picked), std::min(cfg.samples, ds.size()), rng);
    for (std::size_t i : picked)
      images.push_back(ds.images[i]);
  } else {
    for (std::size_t k = 0; k < cfg.samples; ++k)
      images.push_back(oracle::random_image(rng, cfg.random_size, cfg.random_size, cfg.levels));
  }

  const PhConfig ph{cfg.drop_zero, true};
  const auto matches = parallel_map(images.size(), cfg.jobs, [&](std::size_t i) {
    const auto truth = oracle::betti_curve_bruteforce(images[i]);
    const auto from_diagrams =
        oracle::betti_curve_from_diagrams(compute_ph(images[i], ph), truth.thresholds);
    return truth == from_diagrams ? 1 : 0;
  });
  const auto good = static_cast<std::size_t>(std::accumulate(matches.begin(), matches.end(), 0));
  out << good << '/' << images.size() << " exact Betti matches\n";
  return good == images.size() ? kSuccess : kVerificationFailed;
}

struct Timing {
  double mean = 0.0;
  double median = 0.0;
  double p95 = 0.0;
  double batch100 = 0.0;
};

Timing summarize_times(std::vector<double> t) {
  Timing s;
  if (t.empty())
    return s;
  // whole batches of 100; a dataset smaller than that is one partial batch
  double batch_sum = 0.0;
  std::size_t batches = 0;
  for (std::size_t start = 0; start + 100 <= t.size(); start += 100, ++batches)
    batch_sum += std::accumulate(t.begin() + static_cast<std::ptrdiff_t>(start),
                                 t.begin() + static_cast<std::ptrdiff_t>(start + 100), 0.0);
  s.mean = std::accumulate(t.begin(), t.end(), 0.0) / static_cast<double>(t.size());
  s.batch100 = batches ? batch_sum / static_cast<double>(batches) : std::accumulate(t.begin(), t.end(), 0.0);
  std::sort(t.begin(), t.end());
  const std::size_t n = t.size();
  s.median = n % 2 ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]);
  s.p95 = t[std::min(n - 1, static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n))) - 1)];
  return s;
}

int cmd_bench(const PipelineConfig& cfg, std::ostream& out) {
  const LabeledDataset ds = load(cfg);
  using Clock = std::chrono::steady_clock;
  auto seconds = [](Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
  };
  const char* stages[] = {"ph", "tropical+binary", "persistence_image", "persistence_image_avg",
                          "fourier", "blobs", "total"};
  std::map<std::string, std::vector<double>> times;
  const PhConfig ph{cfg.drop_zero, true};
  const FeatureConfig& fc = cfg.features;

  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto t0 = Clock::now();
    const DiagramSet d = compute_ph(ds.images[i], ph);
    const auto t1 = Clock::now();
    const auto pts = select_points(d, fc.degree, fc.essentials);
    const auto lengths = bar_lengths(d, fc.degree, fc.essentials);
    [[maybe_unused]] const TropicalVector trop = tropical_coordinates(lengths);
    std::vector<int> bits;
    for (double theta : fc.theta_grid)
      bits.push_back(binary_bar_feature(lengths, fc.mode, theta, fc.floor));
    const auto t2 = Clock::now();
    const PersistenceImage pi = persistence_image(pts, fc.pi);
    const auto t3 = Clock::now();
    [[maybe_unused]] const PersistenceImage avg = persistence_image_averaged(pts, fc.pi);
    const auto t4 = Clock::now();
    [[maybe_unused]] const ComplexGrid fourier = fourier_coefficients(pi);
    const auto t5 = Clock::now();
    [[maybe_unused]] const BlobSummary blobs = count_blobs(pi, fc.blob_epsilon);
    const auto t6 = Clock::now();

    times["ph"].push_back(seconds(t0, t1));
    times["tropical+binary"].push_back(seconds(t1, t2));
    times["persistence_image"].push_back(seconds(t2, t3));
    times["persistence_image_avg"].push_back(seconds(t3, t4));
    times["fourier"].push_back(seconds(t4, t5));
    times["blobs"].push_back(seconds(t5, t6));
    times["total"].push_back(seconds(t0, t6));
  }

  std::ostringstream report;
  report << "bench: " << ds.size() << " images, single-threaded, seconds\n";
  report << "stage,mean_per_image_s,median_s,p95_s,batch100_s\n";
  for (const char* stage : stages) {
    const Timing s = summarize_times(times[stage]);
    report << stage << ',' << std::scientific << std::setprecision(6) << s.mean << ',' << s.median << ','
           << s.p95 << ',' << s.batch100 << '\n';
  }
  const Timing total = summarize_times(times["total"]);
  report << std::defaultfloat << "average time per image: " << std::scientific << std::setprecision(6)
         << total.mean << " s\n";
  report << "average time per batch of 100: " << total.batch100 << " s\n";
  out << report.str();
  if (!cfg.out.empty()) {
    ensure_dir(cfg.out);
    auto f = open_output(cfg.out / "bench.csv");
    f << report.str();
  }
  return kSuccess;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cubical persistent homology pipeline for grey images"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML-style config file; command-line flags take precedence");

  PipelineConfig cfg;
  std::string format = "csv", degree = "1", mode, theta_grid, essentials = "exclude", grey = "luminance";
  bool keep_zero = false;

  app.add_option("--dataset", cfg.dataset, "Dataset file or directory");
  app.add_option("--format", format, "Dataset format")->check(CLI::IsMember({"idx", "cifar10", "pgm", "csv"}));
  app.add_option("--labels", cfg.labels, "IDX label file");
  app.add_option("--grey", grey, "RGB to grey conversion")->check(CLI::IsMember({"luminance", "mean"}));
  app.add_option("--limit", cfg.limit, "Use only the first N images");
  app.add_option("--degree", degree, "Homological degree for features")->check(CLI::IsMember({"0", "1", "both"}));
  app.add_flag("--keep-zero", keep_zero, "Keep zero-persistence pairs");
  app.add_option("--essential", essentials, "Essential classes in features")
      ->check(CLI::IsMember({"exclude", "cap"}));
  app.add_option("--theta-grid", theta_grid, "Comma-separated thetas, or 'mnist' / 'cifar10'");
  app.add_option("--mode", mode, "Bar feature mode")->check(CLI::IsMember({"interval", "atleast"}));
  app.add_option("--floor", cfg.features.floor, "Lower length bound in interval mode");
  app.add_option("--pi-res", cfg.features.pi.resolution, "Persistence image resolution");
  app.add_option("--pi-a", cfg.features.pi.a, "Persistence image Gaussian covariance scale");
  app.add_option("--pi-b", cfg.features.pi.b, "Persistence image weight ceiling");
  app.add_option("--blob-eps", cfg.features.blob_epsilon, "Blob peak threshold");
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--jobs", cfg.jobs, "Worker threads")->envname("CUBIPH_JOBS");
  app.add_option("--seed", cfg.seed, "Random seed for subset sampling");

  auto* compute = app.add_subcommand("compute", "Persistence diagrams, one CSV per image");
  auto* features = app.add_subcommand("features", "Persistence images, Fourier coefficients, blobs");
  features->add_option("--pi-format", cfg.pi_format, "csv or bin");
  auto* labels = app.add_subcommand("labels", "Label CSV for surrogate training");
  auto* stats = app.add_subcommand("stats", "Bar-count histogram and PH-class crosstabs");
  stats->add_option("--theta", cfg.stats_theta, "Theta splitting the two PH classes");
  stats->add_option("--bin-width", cfg.bin_width, "Histogram bin width");
  stats->add_option("--from-labels", cfg.from_labels, "Recompute from an exported label CSV");
  auto* graph = app.add_subcommand("export-graph", "CC, FCC and symmetrized-boundary graphs");
  graph->add_flag("--node-features", cfg.node_features, "Also write node features");
  graph->add_flag("--matrices", cfg.matrices, "Also write CC/FCC grids and boundary triplets");
  auto* verify = app.add_subcommand("verify", "Check diagrams against the brute-force oracle");
  verify->add_option("--samples", cfg.samples, "Images to check");
  verify->add_option("--size", cfg.random_size, "Side of random images when no dataset is given");
  verify->add_option("--levels", cfg.levels, "Grey levels of random images");
  auto* bench = app.add_subcommand("bench", "Per-image and per-batch timing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  }

  try {
    cfg.format = parse_dataset_format(format);
    cfg.grey = grey == "mean" ? GreyConversion::ChannelMean : GreyConversion::Luminance;
    cfg.drop_zero = !keep_zero;
    cfg.features.degree = degree == "0" ? DegreeSelection::H0
                          : degree == "1" ? DegreeSelection::H1
                                          : DegreeSelection::Both;
    cfg.features.essentials = essentials == "cap" ? EssentialPolicy::CapAtOne : EssentialPolicy::Exclude;
    const bool cifar = cfg.format == DatasetFormat::Cifar10;
    if (mode.empty())
      mode = cifar ? "atleast" : "interval";
    cfg.features.mode = mode == "atleast" ? BarMode::AtLeast : BarMode::Interval;
    cfg.features.theta_grid = theta_grid.empty() ? (cifar ? cifar_theta_grid() : mnist_theta_grid())
                                                 : parse_theta_grid(theta_grid);
    validate_config(cfg);

    if (compute->parsed())
      return cmd_compute(cfg, out);
    if (features->parsed())
      return cmd_features(cfg, out);
    if (labels->parsed())
      return cmd_labels(cfg, out);
    if (stats->parsed())
      return cmd_stats(cfg, out);
    if (graph->parsed())
      return cmd_export_graph(cfg, out);
    if (verify->parsed())
      return cmd_verify(cfg, out);
    if (bench->parsed())
      return cmd_bench(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  }
  err << "error: no subcommand\n";
  return kUsageOrIo;
}

} // namespace cubiph::cli
