#include "cubiph/io.hpp"

#include "cubiph/error.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cubiph {

std::string format_double(double v) {
  if (v == kInfinity)
    return "inf";
  if (v == -kInfinity)
    return "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{})
    throw InternalError("cannot format double");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
    text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text == "inf" || text == "+inf")
    return kInfinity;
  if (text == "-inf")
    return -kInfinity;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw FormatError("cannot parse '" + std::string(text) + "' as a number");
  return v;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos)
      return out;
    start = pos + 1;
  }
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r')
    s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_integer(std::string_view text) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw FormatError("cannot parse '" + std::string(text) + "' as an integer");
  return v;
}

} // namespace

void write_diagram_csv(std::ostream& out, const DiagramSet& d) {
  out << "degree,birth,death\n";
  for (const auto* pts : {&d.h0, &d.h1})
    for (const auto& p : *pts)
      out << p.degree << ',' << format_double(p.birth) << ',' << format_double(p.death) << '\n';
}

DiagramSet read_diagram_csv(std::istream& in) {
  DiagramSet d;
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "degree,birth,death")
    throw FormatError("diagram csv: missing 'degree,birth,death' header");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = strip_cr(line);
    if (row.empty())
      continue;
    const auto cells = split(row, ',');
    if (cells.size() != 3)
      throw FormatError("diagram csv: line " + std::to_string(line_no) + " needs 3 columns");
    PersistencePair p;
    p.degree = parse_integer<int>(cells[0]);
    p.birth = parse_double(cells[1]);
    p.death = parse_double(cells[2]);
    if (p.death != kInfinity)
      p.death_rank = 0; // ranks are not serialized
    if (p.degree == 0)
      d.h0.push_back(p);
    else if (p.degree == 1)
      d.h1.push_back(p);
    else
      throw FormatError("diagram csv: line " + std::to_string(line_no) + " has degree " +
                        std::to_string(p.degree));
  }
  return d;
}

template <typename T>
void write_grid_csv(std::ostream& out, const std::vector<T>& values, std::size_t rows, std::size_t cols) {
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (j)
        out << ',';
      if constexpr (std::is_floating_point_v<T>)
        out << format_double(values[i * cols + j]);
      else
        out << values[i * cols + j];
    }
    out << '\n';
  }
}

template void write_grid_csv<double>(std::ostream&, const std::vector<double>&, std::size_t, std::size_t);
template void write_grid_csv<std::size_t>(std::ostream&, const std::vector<std::size_t>&, std::size_t,
                                          std::size_t);
template void write_grid_csv<int>(std::ostream&, const std::vector<int>&, std::size_t, std::size_t);

void write_edge_list(std::ostream& out, const CellGraph& g) {
  out << "nodes=" << g.n << '\n';
  for (const auto& e : g.edges)
    out << e.src << ' ' << e.dst << ' ' << format_double(e.weight) << '\n';
}

CellGraph read_edge_list(std::istream& in) {
  CellGraph g;
  std::string line;
  if (!std::getline(in, line) || !strip_cr(line).starts_with("nodes="))
    throw FormatError("edge list: missing 'nodes=<n>' header");
  g.n = parse_integer<std::size_t>(strip_cr(line).substr(6));
  while (std::getline(in, line)) {
    const auto row = strip_cr(line);
    if (row.empty())
      continue;
    const auto cells = split(row, ' ');
    if (cells.size() != 3)
      throw FormatError("edge list: expected 'src dst weight'");
    GraphEdge e{parse_integer<std::size_t>(cells[0]), parse_integer<std::size_t>(cells[1]),
                parse_double(cells[2])};
    if (e.src >= g.n || e.dst >= g.n)
      throw FormatError("edge list: node id out of range in '" + std::string(row) + "'");
    g.edges.push_back(e);
  }
  return g;
}

void write_node_features_csv(std::ostream& out, const CellGraph& g) {
  out << "node,dimension,grey_value,rank\n";
  for (std::size_t k = 0; k < g.node_features.size(); ++k) {
    const auto& f = g.node_features[k];
    out << k << ',' << f.dimension << ',' << format_double(f.grey_value) << ',' << f.rank << '\n';
  }
}

void write_boundary_triplets(std::ostream& out, const BoundaryMatrix& b) {
  out << "n=" << b.size() << " nnz=" << b.nonzeros() << '\n';
  for (Rank j = 0; j < b.size(); ++j)
    for (Rank i : b.column(j))
      out << i << ' ' << j << " 1\n";
}

void write_pi_csv(std::ostream& out, const PersistenceImage& pi) {
  write_grid_csv(out, pi.values, pi.n(), pi.n());
}

void write_pi_binary(std::ostream& out, const PersistenceImage& pi) {
  const auto& p = pi.params;
  out << "n=" << pi.n() << " birth=" << format_double(p.birth_lo) << ',' << format_double(p.birth_hi)
      << " pers=" << format_double(p.pers_lo) << ',' << format_double(p.pers_hi) << '\n';
  for (double v : pi.values) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    if constexpr (std::endian::native == std::endian::big)
      bits = __builtin_bswap64(bits);
    char bytes[8];
    std::memcpy(bytes, &bits, 8);
    out.write(bytes, 8);
  }
}

PersistenceImage read_pi_binary(std::istream& in) {
  std::string header;
  if (!std::getline(in, header))
    throw TruncationError("persistence image: missing header");
  PersistenceImage pi;
  for (auto field : split(header, ' ')) {
    const auto eq = field.find('=');
    if (eq == std::string_view::npos)
      throw FormatError("persistence image: bad header field");
    const auto key = field.substr(0, eq);
    const auto val = field.substr(eq + 1);
    if (key == "n") {
      pi.params.resolution = parse_integer<std::size_t>(val);
    } else {
      const auto range = split(val, ',');
      if (range.size() != 2)
        throw FormatError("persistence image: bad range in header");
      if (key == "birth") {
        pi.params.birth_lo = parse_double(range[0]);
        pi.params.birth_hi = parse_double(range[1]);
      } else if (key == "pers") {
        pi.params.pers_lo = parse_double(range[0]);
        pi.params.pers_hi = parse_double(range[1]);
      }
    }
  }
  const std::size_t count = pi.params.resolution * pi.params.resolution;
  pi.values.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    char bytes[8];
    if (!in.read(bytes, 8))
      throw TruncationError("persistence image: data block ends after " + std::to_string(k) + " values");
    std::uint64_t bits = 0;
    std::memcpy(&bits, bytes, 8);
    if constexpr (std::endian::native == std::endian::big)
      bits = __builtin_bswap64(bits);
    pi.values[k] = std::bit_cast<double>(bits);
  }
  return pi;
}

void write_fourier_csv(std::ostream& out, const ComplexGrid& g) {
  out << "k1,k2,re,im\n";
  for (std::size_t k1 = 0; k1 < g.n; ++k1)
    for (std::size_t k2 = 0; k2 < g.n; ++k2) {
      const auto& c = g.at(k1, k2);
      out << k1 << ',' << k2 << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
    }
}

std::string theta_column(double theta) { return "theta=" + format_double(theta); }

namespace {
constexpr const char* kTailColumns[] = {"t1_x10",     "t2_x10",     "t3_x10", "t4_x10",
                                        "mean_d_x10", "blob_count", "n_bars", "total_length"};
constexpr double kTargetScale = 10.0;
} // namespace

void write_feature_header(std::ostream& out, const std::vector<double>& theta_grid) {
  out << "image_id,class_label";
  for (double theta : theta_grid)
    out << ',' << theta_column(theta);
  for (const char* col : kTailColumns)
    out << ',' << col;
  out << '\n';
}

void write_feature_row(std::ostream& out, const FeatureRecord& r) {
  out << r.image_id << ',' << r.class_label;
  for (int b : r.binary)
    out << ',' << b;
  const auto& t = r.tropical;
  for (double v : {t.t1, t.t2, t.t3, t.t4, t.mean_d})
    out << ',' << format_double(v * kTargetScale);
  out << ',' << r.blob_count << ',' << r.n_bars << ',' << format_double(r.total_length) << '\n';
}

FeatureTable read_feature_csv(std::istream& in) {
  FeatureTable table;
  std::string line;
  if (!std::getline(in, line))
    throw FormatError("feature csv: empty stream");
  const auto header = split(strip_cr(line), ',');
  constexpr std::size_t kTail = std::size(kTailColumns);
  if (header.size() < 2 + kTail || header[0] != "image_id" || header[1] != "class_label")
    throw FormatError("feature csv: unexpected header");
  const std::size_t n_theta = header.size() - 2 - kTail;
  for (std::size_t k = 0; k < n_theta; ++k) {
    const auto col = header[2 + k];
    if (!col.starts_with("theta="))
      throw FormatError("feature csv: expected a theta column, got '" + std::string(col) + "'");
    table.theta_grid.push_back(parse_double(col.substr(6)));
  }
  for (std::size_t k = 0; k < kTail; ++k)
    if (header[2 + n_theta + k] != kTailColumns[k])
      throw FormatError("feature csv: expected column '" + std::string(kTailColumns[k]) + "'");

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = strip_cr(line);
    if (row.empty())
      continue;
    const auto cells = split(row, ',');
    if (cells.size() != header.size())
      throw FormatError("feature csv: line " + std::to_string(line_no) + " has " +
                        std::to_string(cells.size()) + " columns");
    FeatureRecord r;
    r.image_id = parse_integer<std::size_t>(cells[0]);
    r.class_label = parse_integer<int>(cells[1]);
    for (std::size_t k = 0; k < n_theta; ++k)
      r.binary.push_back(parse_integer<int>(cells[2 + k]));
    const std::size_t base = 2 + n_theta;
    r.tropical.t1 = parse_double(cells[base]) / kTargetScale;
    r.tropical.t2 = parse_double(cells[base + 1]) / kTargetScale;
    r.tropical.t3 = parse_double(cells[base + 2]) / kTargetScale;
    r.tropical.t4 = parse_double(cells[base + 3]) / kTargetScale;
    r.tropical.mean_d = parse_double(cells[base + 4]) / kTargetScale;
    r.blob_count = parse_integer<std::size_t>(cells[base + 5]);
    r.n_bars = parse_integer<std::size_t>(cells[base + 6]);
    r.total_length = parse_double(cells[base + 7]);
    table.records.push_back(std::move(r));
  }
  return table;
}

void write_histogram_csv(std::ostream& out, const DatasetStats& s) {
  out << "bars,images\n";
  for (const auto& [bin, count] : s.bar_count_histogram)
    out << bin << ',' << count << '\n';
}

void write_histogram_gnuplot(std::ostream& out, const DatasetStats& s) {
  out << "# bars images (bin width " << s.bin_width << ")\n";
  for (const auto& [bin, count] : s.bar_count_histogram)
    out << bin << ' ' << count << '\n';
}

void write_ph_class_csv(std::ostream& out, const DatasetStats& s) {
  out << "ph_class,images\n0," << s.ph_class_counts[0] << "\n1," << s.ph_class_counts[1] << '\n';
}

void write_crosstab_csv(std::ostream& out, const DatasetStats& s) {
  out << "class_label,ph_class,images,avg_bars,avg_bar_length\n";
  for (const auto& [label, cells] : s.crosstab)
    for (int ph = 0; ph < 2; ++ph) {
      const auto& c = cells[static_cast<std::size_t>(ph)];
      out << label << ',' << ph << ',' << c.images << ',' << format_double(c.avg_bars()) << ','
          << format_double(c.avg_length()) << '\n';
    }
}

std::ofstream open_output(const std::filesystem::path& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
  if (!out)
    throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

} // namespace cubiph
