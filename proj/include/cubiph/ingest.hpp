#pragma once

#include "cubiph/image.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>

namespace cubiph {

using ByteSpan = std::span<const std::uint8_t>;

enum class GreyConversion {
  Luminance,   ///< ITU-R BT.601 weights 0.299 / 0.587 / 0.114
  ChannelMean, ///< (r + g + b) / 3
};

/// Grey value in [0,1] of one RGB pixel.
double rgb_to_grey(std::uint8_t r, std::uint8_t g, std::uint8_t b,
                   GreyConversion conversion = GreyConversion::Luminance);

/// raw / 255 per pixel; three-channel input goes through rgb_to_grey.
GreyImage normalize(const RawImage& raw, GreyConversion conversion = GreyConversion::Luminance);

/// MNIST IDX pair: images (magic 0x00000803) and labels (magic 0x00000801).
LabeledDataset load_idx(ByteSpan image_bytes, ByteSpan label_bytes);

/// IDX image stream only; every class label is 0.
LabeledDataset load_idx_images(ByteSpan image_bytes);

/// CIFAR-10 binary batch: 3073-byte records, label byte then R, G, B planes of 32x32.
LabeledDataset load_cifar10(ByteSpan bytes, GreyConversion conversion = GreyConversion::Luminance);

/// Netpbm grey map, plain (P2) or raw (P5), normalized by its maxval.
GreyImage load_pgm(ByteSpan bytes);

/// CSV images: one line per image row, already-normalized reals.
///
/// Several images may share one stream, separated by blank lines. A comment
/// line `# label=<k>` sets the class label of the image that follows; other
/// `#` lines are ignored.
LabeledDataset load_csv(std::string_view text);

enum class DatasetFormat { Idx, Cifar10, Pgm, Csv };

DatasetFormat parse_dataset_format(std::string_view name);

/// Reads a dataset from disk. For PGM and CSV the path may be a directory,
/// in which case every matching file is loaded in lexicographic order. For
/// IDX, `labels` names the label file; when empty, the conventional
/// `*-images-idx3-ubyte` -> `*-labels-idx1-ubyte` sibling is tried and
/// labels default to 0 when it does not exist.
LabeledDataset load_dataset(const std::filesystem::path& path, DatasetFormat format,
                            const std::filesystem::path& labels = {},
                            GreyConversion conversion = GreyConversion::Luminance);

/// Whole file as bytes; IoError naming the path on failure.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

} // namespace cubiph
