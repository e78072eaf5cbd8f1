#include "cubiph/ingest.hpp"

#include "cubiph/error.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace cubiph {

namespace {

constexpr std::uint32_t kIdxImageMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelMagic = 0x00000801;
constexpr std::size_t kCifarSide = 32;
constexpr std::size_t kCifarRecord = 1 + 3 * kCifarSide * kCifarSide;

std::uint32_t read_be32(ByteSpan bytes, std::size_t offset) {
  if (offset + 4 > bytes.size())
    throw TruncationError("idx: stream ends inside the header");
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

std::string hex32(std::uint32_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s = "0x";
  for (int shift = 28; shift >= 0; shift -= 4)
    s.push_back(digits[(v >> shift) & 0xF]);
  return s;
}

struct IdxImages {
  std::size_t count = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  ByteSpan payload;
};

IdxImages parse_idx_images(ByteSpan bytes) {
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != kIdxImageMagic)
    throw FormatError("idx: bad image magic " + hex32(magic) + ", expected 0x00000803");
  IdxImages out;
  out.count = read_be32(bytes, 4);
  out.rows = read_be32(bytes, 8);
  out.cols = read_be32(bytes, 12);
  const std::size_t expected = out.count * out.rows * out.cols;
  const std::size_t available = bytes.size() - 16;
  if (available < expected)
    throw TruncationError("idx: image stream holds " + std::to_string(available) +
                          " pixel bytes, header declares " + std::to_string(expected));
  if (available > expected)
    throw CorruptFileError("idx: image stream has " + std::to_string(available - expected) +
                           " trailing bytes beyond the declared " + std::to_string(out.count) +
                           " records");
  out.payload = bytes.subspan(16);
  return out;
}

std::vector<GreyImage> decode_idx_images(const IdxImages& idx) {
  std::vector<GreyImage> images;
  images.reserve(idx.count);
  const std::size_t stride = idx.rows * idx.cols;
  for (std::size_t r = 0; r < idx.count; ++r) {
    RawImage raw{idx.cols, idx.rows, 1, {}};
    auto first = idx.payload.begin() + static_cast<std::ptrdiff_t>(r * stride);
    raw.pixels.assign(first, first + static_cast<std::ptrdiff_t>(stride));
    images.push_back(normalize(raw));
  }
  return images;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front()))
    s.remove_prefix(1);
  while (!s.empty() && is_space(s.back()))
    s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view token, std::size_t line_no) {
  token = trim(token);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw FormatError("csv: line " + std::to_string(line_no) + ": cannot parse '" +
                      std::string(token) + "' as a real");
  return v;
}

// Netpbm header tokens, skipping whitespace and '#' comments.
class PgmTokenizer {
public:
  explicit PgmTokenizer(ByteSpan bytes) : bytes_(bytes) {}

  std::string next() {
    skip();
    std::string tok;
    while (pos_ < bytes_.size() && !is_space(static_cast<char>(bytes_[pos_])))
      tok.push_back(static_cast<char>(bytes_[pos_++]));
    if (tok.empty())
      throw TruncationError("pgm: unexpected end of stream");
    return tok;
  }

  std::size_t next_uint() {
    const std::string tok = next();
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw FormatError("pgm: expected an unsigned integer, got '" + tok + "'");
    return v;
  }

  // Exactly one whitespace byte separates the header from P5 raster data.
  ByteSpan raster() {
    if (pos_ >= bytes_.size())
      throw TruncationError("pgm: missing raster");
    return bytes_.subspan(pos_ + 1);
  }

private:
  void skip() {
    while (pos_ < bytes_.size()) {
      const char c = static_cast<char>(bytes_[pos_]);
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
          ++pos_;
      } else if (is_space(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  ByteSpan bytes_;
  std::size_t pos_ = 0;
};

} // namespace

double rgb_to_grey(std::uint8_t r, std::uint8_t g, std::uint8_t b, GreyConversion conversion) {
  double v = 0.0;
  if (conversion == GreyConversion::Luminance)
    v = (0.299 * r + 0.587 * g + 0.114 * b) / 255.0;
  else
    v = (static_cast<double>(r) + g + b) / (3.0 * 255.0);
  return std::clamp(v, 0.0, 1.0);
}

GreyImage normalize(const RawImage& raw, GreyConversion conversion) {
  raw.validate();
  const std::size_t n = raw.width * raw.height;
  std::vector<double> values(n);
  if (raw.channels == 1) {
    for (std::size_t i = 0; i < n; ++i)
      values[i] = raw.pixels[i] / 255.0;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      values[i] = rgb_to_grey(raw.pixels[3 * i], raw.pixels[3 * i + 1], raw.pixels[3 * i + 2],
                              conversion);
  }
  return GreyImage(raw.width, raw.height, std::move(values));
}

LabeledDataset load_idx(ByteSpan image_bytes, ByteSpan label_bytes) {
  const IdxImages idx = parse_idx_images(image_bytes);

  const std::uint32_t magic = read_be32(label_bytes, 0);
  if (magic != kIdxLabelMagic)
    throw FormatError("idx: bad label magic " + hex32(magic) + ", expected 0x00000801");
  const std::size_t label_count = read_be32(label_bytes, 4);
  if (label_count != idx.count)
    throw CorruptFileError("idx: label stream declares " + std::to_string(label_count) +
                           " records, image stream declares " + std::to_string(idx.count));
  const std::size_t available = label_bytes.size() - 8;
  if (available < label_count)
    throw TruncationError("idx: label stream holds " + std::to_string(available) +
                          " labels, header declares " + std::to_string(label_count));
  if (available > label_count)
    throw CorruptFileError("idx: label stream has trailing bytes");

  LabeledDataset ds;
  ds.images = decode_idx_images(idx);
  ds.class_labels.reserve(label_count);
  for (std::size_t i = 0; i < label_count; ++i)
    ds.class_labels.push_back(label_bytes[8 + i]);
  return ds;
}

LabeledDataset load_idx_images(ByteSpan image_bytes) {
  LabeledDataset ds;
  ds.images = decode_idx_images(parse_idx_images(image_bytes));
  ds.class_labels.assign(ds.images.size(), 0);
  return ds;
}

LabeledDataset load_cifar10(ByteSpan bytes, GreyConversion conversion) {
  if (bytes.size() % kCifarRecord != 0)
    throw FormatError("cifar10: stream length " + std::to_string(bytes.size()) +
                      " is not a multiple of 3073");
  const std::size_t count = bytes.size() / kCifarRecord;
  const std::size_t plane = kCifarSide * kCifarSide;
  LabeledDataset ds;
  ds.images.reserve(count);
  ds.class_labels.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    const ByteSpan record = bytes.subspan(r * kCifarRecord, kCifarRecord);
    if (record[0] > 9)
      throw FormatError("cifar10: record " + std::to_string(r) + " has label byte " +
                        std::to_string(record[0]));
    std::vector<double> values(plane);
    for (std::size_t i = 0; i < plane; ++i)
      values[i] = rgb_to_grey(record[1 + i], record[1 + plane + i], record[1 + 2 * plane + i],
                              conversion);
    ds.images.emplace_back(kCifarSide, kCifarSide, std::move(values));
    ds.class_labels.push_back(record[0]);
  }
  return ds;
}

GreyImage load_pgm(ByteSpan bytes) {
  PgmTokenizer tok(bytes);
  const std::string magic = tok.next();
  if (magic != "P2" && magic != "P5")
    throw FormatError("pgm: unsupported magic '" + magic + "'");
  const std::size_t width = tok.next_uint();
  const std::size_t height = tok.next_uint();
  const std::size_t maxval = tok.next_uint();
  if (maxval == 0 || maxval > 65535)
    throw FormatError("pgm: maxval out of range");
  if (width == 0 || height == 0)
    throw FormatError("pgm: empty image");

  const std::size_t n = width * height;
  std::vector<double> values(n);
  const double scale = static_cast<double>(maxval);
  if (magic == "P2") {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = tok.next_uint();
      if (v > maxval)
        throw FormatError("pgm: sample exceeds maxval");
      values[i] = static_cast<double>(v) / scale;
    }
  } else {
    const ByteSpan raster = tok.raster();
    const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
    if (raster.size() < n * sample_bytes)
      throw TruncationError("pgm: raster holds " + std::to_string(raster.size()) +
                            " bytes, expected " + std::to_string(n * sample_bytes));
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = sample_bytes == 1
                                ? raster[i]
                                : (std::size_t{raster[2 * i]} << 8) | raster[2 * i + 1];
      if (v > maxval)
        throw FormatError("pgm: sample exceeds maxval");
      values[i] = static_cast<double>(v) / scale;
    }
  }
  return GreyImage(width, height, std::move(values));
}

LabeledDataset load_csv(std::string_view text) {
  LabeledDataset ds;
  std::vector<std::vector<double>> rows;
  int pending_label = 0;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (rows.empty())
      return;
    GreyImage img = GreyImage::from_rows(rows);
    if (!img.is_normalized())
      throw FormatError("csv: image " + std::to_string(ds.images.size()) +
                        " has grey values outside [0,1]");
    ds.images.push_back(std::move(img));
    ds.class_labels.push_back(pending_label);
    pending_label = 0;
    rows.clear();
  };

  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;

    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') {
      line = trim(line.substr(1));
      if (line.starts_with("label=")) {
        flush();
        const std::string_view num = line.substr(6);
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), pending_label);
        if (ec != std::errc{} || pending_label < 0 || pending_label > 9)
          throw FormatError("csv: line " + std::to_string(line_no) + ": bad label comment");
      }
      continue;
    }
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      row.push_back(parse_real(line.substr(start, comma - start), line_no));
      if (comma == std::string_view::npos)
        break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw FormatError("csv: line " + std::to_string(line_no) + " has " +
                        std::to_string(row.size()) + " cells, expected " +
                        std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  flush();
  return ds;
}

DatasetFormat parse_dataset_format(std::string_view name) {
  if (name == "idx")
    return DatasetFormat::Idx;
  if (name == "cifar10")
    return DatasetFormat::Cifar10;
  if (name == "pgm")
    return DatasetFormat::Pgm;
  if (name == "csv")
    return DatasetFormat::Csv;
  throw ParameterError("unknown dataset format '" + std::string(name) + "'");
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad())
    throw IoError("read failed for '" + path.string() + "'");
  return bytes;
}

namespace {

std::vector<std::filesystem::path> files_with_extension(const std::filesystem::path& dir,
                                                        std::string_view ext) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ext)
      files.push_back(entry.path());
  if (ec)
    throw IoError("cannot list '" + dir.string() + "': " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

template <typename Fn>
auto with_file_context(const std::filesystem::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    // Keep the original category, prefix the path.
    if (dynamic_cast<const TruncationError*>(&e))
      throw TruncationError(path.string() + ": " + e.what());
    if (dynamic_cast<const CorruptFileError*>(&e))
      throw CorruptFileError(path.string() + ": " + e.what());
    throw FormatError(path.string() + ": " + e.what());
  }
}

} // namespace

LabeledDataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                            const std::filesystem::path& labels, GreyConversion conversion) {
  if (!std::filesystem::exists(path))
    throw IoError("dataset path '" + path.string() + "' does not exist");

  switch (format) {
  case DatasetFormat::Idx: {
    const auto image_bytes = read_file(path);
    std::filesystem::path label_path = labels;
    if (label_path.empty()) {
      std::string name = path.filename().string();
      const auto pos = name.find("images-idx3");
      if (pos != std::string::npos) {
        name.replace(pos, 11, "labels-idx1");
        label_path = path.parent_path() / name;
      }
    }
    if (!label_path.empty() && std::filesystem::exists(label_path)) {
      const auto label_bytes = read_file(label_path);
      return with_file_context(path, [&] { return load_idx(image_bytes, label_bytes); });
    }
    if (!labels.empty())
      throw IoError("label file '" + labels.string() + "' does not exist");
    return with_file_context(path, [&] { return load_idx_images(image_bytes); });
  }
  case DatasetFormat::Cifar10: {
    const auto bytes = read_file(path);
    return with_file_context(path, [&] { return load_cifar10(bytes, conversion); });
  }
  case DatasetFormat::Pgm: {
    LabeledDataset ds;
    const auto files = std::filesystem::is_directory(path)
                           ? files_with_extension(path, ".pgm")
                           : std::vector<std::filesystem::path>{path};
    for (const auto& file : files) {
      const auto bytes = read_file(file);
      ds.images.push_back(with_file_context(file, [&] { return load_pgm(bytes); }));
      ds.class_labels.push_back(0);
    }
    return ds;
  }
  case DatasetFormat::Csv: {
    LabeledDataset ds;
    const auto files = std::filesystem::is_directory(path)
                           ? files_with_extension(path, ".csv")
                           : std::vector<std::filesystem::path>{path};
    for (const auto& file : files) {
      const auto bytes = read_file(file);
      const std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      LabeledDataset part = with_file_context(file, [&] { return load_csv(text); });
      std::move(part.images.begin(), part.images.end(), std::back_inserter(ds.images));
      ds.class_labels.insert(ds.class_labels.end(), part.class_labels.begin(),
                             part.class_labels.end());
    }
    return ds;
  }
  }
  throw InternalError("unhandled dataset format");
}

} // namespace cubiph
