#pragma once

// Smooth metrics with no special structure, for identities that must hold
// on any geometry.

#include <cmath>

#include "kkforms/field.hpp"

namespace fixtures {

using kkforms::SmoothField;

// A generic (non conformally flat) Lorentzian metric in four dimensions.
inline SmoothField lumpy4() {
  return SmoothField::make(4, {2, 0}, [](auto x, auto out) {
    using std::sin, std::cos;
    for (int i = 0; i < 16; ++i) out[i] = 0.0 * x[0];
    out[0] = -1.0 - 0.2 * x[1] * x[1];
    out[5] = 1.0 + 0.3 * sin(x[0]) * x[2];
    out[10] = 1.5 + 0.1 * x[3] * x[1];
    out[15] = 1.0 + 0.25 * cos(x[2]);
    out[1] = out[4] = 0.1 * x[2] * x[3];
    out[6] = out[9] = 0.05 * sin(x[3] + x[0]);
    out[11] = out[14] = 0.07 * x[0] * x[1];
  });
}

// Same pattern in three dimensions.
inline SmoothField lumpy3() {
  return SmoothField::make(3, {2, 0}, [](auto x, auto out) {
    using std::sin, std::cos;
    out[0] = 1.0 + 0.3 * x[1] * x[1];
    out[4] = 2.0 + sin(x[0]) * x[2];
    out[8] = -1.0 - 0.2 * cos(x[1] * x[0]);
    out[1] = out[3] = 0.1 * x[2];
    out[2] = out[6] = 0.2 * sin(x[1]);
    out[5] = out[7] = 0.05 * x[0] * x[2];
  });
}

}  // namespace fixtures
