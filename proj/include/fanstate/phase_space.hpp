#pragma once

#include <vector>

#include "fanstate/coherent_algebra.hpp"

namespace fanstate {

// Rectangular sampling of the Husimi Q-function. Values are stored row-major
// over x (outer) then y (inner), evaluated at cell centers.
struct QGrid {
    double x_min, x_max, y_min, y_max;
    int nx, ny;
    std::vector<double> values;

    double value_at(int ix, int iy) const {
        return values[static_cast<std::size_t>(ix) * static_cast<std::size_t>(ny) +
                      static_cast<std::size_t>(iy)];
    }
    double x_center(int ix) const { return x_min + (ix + 0.5) * (x_max - x_min) / nx; }
    double y_center(int iy) const { return y_min + (iy + 0.5) * (y_max - y_min) / ny; }
};

struct QPeak {
    double x, y;
    double value;
};

// Q(zeta) = |<zeta|A>|^2 / pi for unit-norm A; bounded by 1/pi. Throws if A is
// not normalized within 1e-10.
double q_value(const CoherentSuperposition& a, Complex zeta);

QGrid q_grid(const CoherentSuperposition& a, double x_min, double x_max,
             double y_min, double y_max, int nx, int ny);

// Strict local maxima over 8-neighborhoods with value >= threshold_frac * max,
// sorted by value descending.
std::vector<QPeak> peak_find(const QGrid& grid, double threshold_frac);

}  // namespace fanstate
