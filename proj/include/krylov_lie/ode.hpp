// ode.hpp — embedded Dormand-Prince RK5(4) over complex Eigen vectors.
// Output lands exactly on the caller's grid; internal steps are adaptive and
// additionally split at supplied breakpoints so discontinuous right-hand
// sides never straddle a step.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace klie {

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    std::int64_t max_steps = 20'000'000;
};

namespace detail {

// Dormand-Prince coefficients
inline constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
// 5th-order weights equal the last A row (FSAL); error weights = b5 - b4
inline constexpr double kE[7] = {35.0 / 384 - 5179.0 / 57600, 0.0,
                                 500.0 / 1113 - 7571.0 / 16695, 125.0 / 192 - 393.0 / 640,
                                 -2187.0 / 6784 + 92097.0 / 339200, 11.0 / 84 - 187.0 / 2100,
                                 -1.0 / 40};

}  // namespace detail

/// Integrates y' = f(t, y) from grid.front() through every grid point, calling
/// `emit(i, t, y)` at each grid index i (including i = 0 with the initial
/// state). `stops` are forced step boundaries (e.g. envelope breakpoints).
template <class Vec, class Rhs, class Emit>
void integrate_ode_grid(Rhs&& f, Vec y, const std::vector<double>& grid, const std::vector<double>& stops,
                        const OdeOptions& opts, Emit&& emit) {
    if (grid.size() < 1) throw std::invalid_argument("integrate_ode_grid: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("integrate_ode_grid: grid must be ascending");
    }

    // merged checkpoint list: grid points + interior stops
    std::vector<std::pair<double, std::int64_t>> checkpoints;  // (time, grid index or -1)
    checkpoints.reserve(grid.size() + stops.size());
    for (std::size_t i = 0; i < grid.size(); ++i) checkpoints.push_back({grid[i], static_cast<std::int64_t>(i)});
    for (double s : stops) {
        if (s > grid.front() && s < grid.back()) checkpoints.push_back({s, -1});
    }
    std::sort(checkpoints.begin(), checkpoints.end());

    double t = grid.front();
    emit(0, t, y);

    const double span = std::max(grid.back() - grid.front(), 1e-300);
    double dt = std::min({span / 100.0, opts.max_step, 1e-2});
    std::int64_t steps = 0;

    Vec k[7];
    k[0] = f(t, y);

    for (std::size_t ci = 1; ci < checkpoints.size(); ++ci) {
        const auto [t_target, grid_index] = checkpoints[ci];
        if (t_target <= t) {
            if (grid_index >= 0) emit(static_cast<std::size_t>(grid_index), t, y);
            continue;
        }
        // stage evaluations are clamped strictly inside the current smooth
        // segment so one-sided limits are taken at checkpoint discontinuities
        const double nudge = 1e-13 * span;
        const double seg_lo = t + nudge;
        const double seg_hi = t_target - nudge;
        auto feval = [&](double tq, const Vec& yq) { return f(std::clamp(tq, seg_lo, seg_hi), yq); };
        k[0] = feval(t, y);
        while (t < t_target) {
            if (++steps > opts.max_steps) throw std::runtime_error("integrate_ode_grid: step budget exhausted");
            if (t_target - t <= 1e-13 * span) {  // sub-roundoff sliver left by clamped landings
                t = t_target;
                break;
            }
            const bool lands = dt >= t_target - t;
            double h = std::min({dt, opts.max_step, t_target - t});
            if (h < 1e-14 * span) throw std::runtime_error("integrate_ode_grid: step size underflow");

            for (int s = 1; s < 7; ++s) {
                Vec ys = y;
                for (int m = 0; m < s; ++m) {
                    if (detail::kA[s][m] != 0.0) ys += (h * detail::kA[s][m]) * k[m];
                }
                k[s] = feval(t + detail::kC[s] * h, ys);
            }
            Vec y5 = y;
            for (int m = 0; m < 6; ++m) {
                if (detail::kA[6][m] != 0.0) y5 += (h * detail::kA[6][m]) * k[m];
            }
            Vec err = detail::kE[0] * k[0];
            for (int m = 1; m < 7; ++m) {
                if (detail::kE[m] != 0.0) err += detail::kE[m] * k[m];
            }
            err *= h;

            double norm2 = 0.0;
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double scale = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
                const double q = std::abs(err[i]) / scale;
                norm2 += q * q;
            }
            // error-per-unit-step control: the accumulated error over the whole
            // span stays ~ tol * span instead of tol * step_count
            const double err_norm = std::sqrt(norm2 / static_cast<double>(y.size())) / std::max(h, 1e-300);

            if (err_norm <= 1.0) {
                t = lands ? t_target : t + h;
                y = y5;
                k[0] = k[6];  // FSAL: f at the new (t, y)
            }
            const double factor = (err_norm > 0.0) ? 0.9 * std::pow(err_norm, -0.25) : 5.0;
            dt = h * std::clamp(factor, 0.2, 5.0);
        }
        if (grid_index >= 0) emit(static_cast<std::size_t>(grid_index), t, y);
    }
}

}  // namespace klie
