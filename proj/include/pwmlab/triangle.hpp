#pragma once

#include <cmath>
#include <numbers>

namespace pwmlab {

// Carrier shape convention used everywhere: tri(0) = -1 and rising, so the
// first comparator crossing happens promptly after t = 0. Period 2*pi in
// theta, range [-1, 1].
inline double triangle_from_phase(double theta) {
    return (2.0 / std::numbers::pi) * std::asin(std::sin(theta - std::numbers::pi / 2.0));
}

} // namespace pwmlab
