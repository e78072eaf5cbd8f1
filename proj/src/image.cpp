#include "cubiph/image.hpp"

#include "cubiph/error.hpp"

#include <algorithm>
#include <cmath>

namespace cubiph {

void RawImage::validate() const {
  if (channels != 1 && channels != 3)
    throw FormatError("raw image: channels must be 1 or 3, got " + std::to_string(channels));
  if (pixels.size() != width * height * channels)
    throw FormatError("raw image: pixel buffer has " + std::to_string(pixels.size()) +
                      " bytes, expected " + std::to_string(width * height * channels));
}

GreyImage::GreyImage(std::size_t width, std::size_t height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  if (values_.size() != width_ * height_)
    throw DomainError("grey image: " + std::to_string(values_.size()) + " values for a " +
                      std::to_string(height_) + "x" + std::to_string(width_) + " image");
  if (std::any_of(values_.begin(), values_.end(), [](double v) { return !std::isfinite(v); }))
    throw DomainError("grey image: non-finite grey value");
}

GreyImage GreyImage::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t height = rows.size();
  const std::size_t width = height == 0 ? 0 : rows.front().size();
  std::vector<double> values;
  values.reserve(width * height);
  for (const auto& row : rows) {
    if (row.size() != width)
      throw DomainError("grey image: ragged rows");
    values.insert(values.end(), row.begin(), row.end());
  }
  return GreyImage(width, height, std::move(values));
}

bool GreyImage::is_normalized() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

} // namespace cubiph
