#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cubiph {

/// Undecoded pixel data, values in [0,255], row-major, channel-interleaved.
struct RawImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t channels = 1;
  std::vector<std::uint8_t> pixels;

  /// Throws FormatError when channels is not 1 or 3 or the buffer size is off.
  void validate() const;
};

/// Real-valued grey image, row-major.
///
/// Loaders always produce values in [0,1]. The complex builders accept any
/// finite values so that hand-built integer fixtures can be used directly.
class GreyImage {
public:
  GreyImage() = default;
  GreyImage(std::size_t width, std::size_t height, std::vector<double> values);

  /// Builds an image from nested rows; every row must have the same length.
  static GreyImage from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  bool empty() const { return values_.empty(); }

  double at(std::size_t row, std::size_t col) const { return values_[row * width_ + col]; }
  double& at(std::size_t row, std::size_t col) { return values_[row * width_ + col]; }

  const std::vector<double>& values() const { return values_; }

  /// True when every value lies in [0,1].
  bool is_normalized() const;

private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> values_;
};

enum class SplitTag { Train, Validation, Test };

struct LabeledDataset {
  std::vector<GreyImage> images;
  std::vector<int> class_labels;
  SplitTag split = SplitTag::Train;

  std::size_t size() const { return images.size(); }
};

} // namespace cubiph
