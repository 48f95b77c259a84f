#include "fanstate/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fanstate {

namespace {

double q_value_unchecked(const CoherentSuperposition& a, Complex zeta) {
    Complex amplitude = 0.0;
    for (const auto& t : a.terms()) amplitude += t.coeff * coherent_overlap(zeta, t.amp);
    return std::norm(amplitude) / std::numbers::pi;
}

void require_normalized(const CoherentSuperposition& a) {
    if (std::abs(norm_sq(a) - 1.0) > 1e-10)
        throw std::invalid_argument("Q-function requires a unit-norm state");
}

}  // namespace

double q_value(const CoherentSuperposition& a, Complex zeta) {
    require_normalized(a);
    return q_value_unchecked(a, zeta);
}

QGrid q_grid(const CoherentSuperposition& a, double x_min, double x_max,
             double y_min, double y_max, int nx, int ny) {
    if (!(x_min < x_max) || !(y_min < y_max))
        throw std::invalid_argument("q_grid: degenerate bounds");
    if (nx < 2 || ny < 2) throw std::invalid_argument("q_grid: need at least 2x2 cells");
    require_normalized(a);
    QGrid grid{x_min, x_max, y_min, y_max, nx, ny, {}};
    grid.values.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    for (int ix = 0; ix < nx; ++ix) {
        const double x = grid.x_center(ix);
        for (int iy = 0; iy < ny; ++iy)
            grid.values[static_cast<std::size_t>(ix) * ny + iy] =
                q_value_unchecked(a, Complex{x, grid.y_center(iy)});
    }
    return grid;
}

std::vector<QPeak> peak_find(const QGrid& grid, double threshold_frac) {
    if (!(threshold_frac > 0.0) || !(threshold_frac < 1.0))
        throw std::invalid_argument("peak_find: threshold_frac must lie in (0, 1)");
    const double top = *std::max_element(grid.values.begin(), grid.values.end());
    const double floor = threshold_frac * top;
    std::vector<QPeak> peaks;
    for (int ix = 0; ix < grid.nx; ++ix) {
        for (int iy = 0; iy < grid.ny; ++iy) {
            const double v = grid.value_at(ix, iy);
            if (v < floor) continue;
            bool is_peak = true;
            for (int dx = -1; dx <= 1 && is_peak; ++dx) {
                for (int dy = -1; dy <= 1 && is_peak; ++dy) {
                    if (dx == 0 && dy == 0) continue;
                    const int jx = ix + dx, jy = iy + dy;
                    if (jx < 0 || jx >= grid.nx || jy < 0 || jy >= grid.ny) continue;
                    if (grid.value_at(jx, jy) >= v) is_peak = false;
                }
            }
            if (is_peak) peaks.push_back({grid.x_center(ix), grid.y_center(iy), v});
        }
    }
    std::sort(peaks.begin(), peaks.end(), [](const QPeak& a, const QPeak& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    });
    return peaks;
}

}  // namespace fanstate
