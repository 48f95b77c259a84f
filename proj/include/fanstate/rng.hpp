#pragma once

#include <cstdint>
#include <random>

#include "fanstate/coherent_algebra.hpp"

namespace fanstate {

// Deterministic random draws for the verification suites. Doubles are built
// from raw mt19937_64 output (std::uniform_real_distribution is
// implementation-defined, which would break seed-stable counterexamples).
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform over the disc |z| <= radius.
    Complex disc(double radius);

    /// Uniform phase on the unit circle.
    Complex phase();

private:
    std::mt19937_64 eng_;
};

}  // namespace fanstate
