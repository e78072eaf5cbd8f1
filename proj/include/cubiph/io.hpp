#pragma once

#include "cubiph/boundary.hpp"
#include "cubiph/features.hpp"
#include "cubiph/reduce.hpp"
#include "cubiph/stats.hpp"

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

namespace cubiph {

/// Shortest decimal text that parses back to the same double; "inf" for +inf.
std::string format_double(double v);

/// Parses format_double output (and anything std::from_chars accepts).
double parse_double(std::string_view text);

// Diagrams: header `degree,birth,death`, one row per point, `inf` deaths.
void write_diagram_csv(std::ostream& out, const DiagramSet& d);
DiagramSet read_diagram_csv(std::istream& in);

/// Comma-separated grid, one line per row.
template <typename T>
void write_grid_csv(std::ostream& out, const std::vector<T>& values, std::size_t rows, std::size_t cols);

/// `nodes=<n>` header, then `src dst weight` per edge, zero-based ids.
void write_edge_list(std::ostream& out, const CellGraph& g);
CellGraph read_edge_list(std::istream& in);

/// `node,dimension,grey_value,rank`
void write_node_features_csv(std::ostream& out, const CellGraph& g);

/// `n=<n> nnz=<k>` header, then zero-based `row col 1` per entry, column-major.
void write_boundary_triplets(std::ostream& out, const BoundaryMatrix& b);

void write_pi_csv(std::ostream& out, const PersistenceImage& pi);

/// Text header line `n=<n> birth=<lo>,<hi> pers=<lo>,<hi>` followed by n*n
/// little-endian float64 values, row-major.
void write_pi_binary(std::ostream& out, const PersistenceImage& pi);
PersistenceImage read_pi_binary(std::istream& in);

/// `k1,k2,re,im` per coefficient.
void write_fourier_csv(std::ostream& out, const ComplexGrid& g);

/// Column name of a theta in the label CSV header.
std::string theta_column(double theta);

/// Label CSV header: image_id, class_label, one theta=<v> column per grid
/// value, t1_x10..t4_x10, mean_d_x10, blob_count, n_bars, total_length.
void write_feature_header(std::ostream& out, const std::vector<double>& theta_grid);
void write_feature_row(std::ostream& out, const FeatureRecord& r);

struct FeatureTable {
  std::vector<double> theta_grid;
  std::vector<FeatureRecord> records;
};

/// Reads a label CSV back. Tropical values are recovered by dividing the
/// scaled columns by 10; n_bars and total_length are exact.
FeatureTable read_feature_csv(std::istream& in);

// Dataset statistics tables.
void write_histogram_csv(std::ostream& out, const DatasetStats& s);
void write_histogram_gnuplot(std::ostream& out, const DatasetStats& s);
void write_ph_class_csv(std::ostream& out, const DatasetStats& s);
void write_crosstab_csv(std::ostream& out, const DatasetStats& s);

/// Opens a file for writing or throws IoError naming it.
std::ofstream open_output(const std::filesystem::path& path, bool binary = false);

} // namespace cubiph
