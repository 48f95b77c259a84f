#include "fanstate/rng.hpp"

#include <cmath>
#include <numbers>

namespace fanstate {

Complex DetRng::disc(double radius) {
    const double r = radius * std::sqrt(uniform01());
    return std::polar(r, 2.0 * std::numbers::pi * uniform01());
}

Complex DetRng::phase() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform01()); }

}  // namespace fanstate
