#pragma once

#include "cubiph/complex.hpp"
#include "cubiph/image.hpp"

#include <vector>

namespace fixtures {

// The worked 2x2 example: image, extended values, printed order and boundary matrix.
inline cubiph::GreyImage example_image() { return cubiph::GreyImage::from_rows({{1, 3}, {3, 2}}); }

inline const std::vector<double> kExampleCC = {1, 3, 3, 3, 3, 3, 3, 3, 2};

inline const std::vector<std::size_t> kExampleOrder = {1, 8, 6, 5, 9, 7, 3, 4, 2};

inline const std::vector<int> kExampleB = {
    0, 0, 0, 0, 1, 0, 0, 1, 0, //
    0, 0, 0, 1, 0, 0, 1, 0, 0, //
    0, 0, 0, 1, 1, 0, 0, 0, 0, //
    0, 0, 0, 0, 0, 0, 0, 0, 1, //
    0, 0, 0, 0, 0, 0, 0, 0, 1, //
    0, 0, 0, 0, 0, 0, 1, 1, 0, //
    0, 0, 0, 0, 0, 0, 0, 0, 1, //
    0, 0, 0, 0, 0, 0, 0, 0, 1, //
    0, 0, 0, 0, 0, 0, 0, 0, 0,
};

inline cubiph::Filtration example_filtration() {
  return cubiph::build_filtration(cubiph::build_cubical_complex(example_image()),
                                  cubiph::OrderPolicy::explicit_order(kExampleOrder));
}

// Dark one-pixel-wide ring (0.2) around a light centre on a light background (0.9).
inline cubiph::GreyImage ring_image() {
  const double o = 0.9, r = 0.2;
  return cubiph::GreyImage::from_rows({
      {o, o, o, o, o},
      {o, r, r, r, o},
      {o, r, o, r, o},
      {o, r, r, r, o},
      {o, o, o, o, o},
  });
}

} // namespace fixtures
