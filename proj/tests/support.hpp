// support.hpp — shared test helpers: grids, seeded random drives, and the
// independent Riccati-chart integrator used to cross-check the (a,b) chart.

#pragma once

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "krylov_lie/drive.hpp"

namespace klie::testing {

inline std::vector<double> linspace(double t_end, int n) {
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = t_end * static_cast<double>(i) / (n - 1);
    return ts;
}

/// Smooth random drive: a short Fourier sum sampled onto a dense table.
inline Tabulated random_drive(std::mt19937& rng, double t_end, double amplitude = 0.6,
                              bool complex_phase = true) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> freq(0.3, 2.0);
    const int modes = 3;
    std::vector<double> ar(modes), br(modes), ai(modes), bi(modes), wr(modes);
    for (int m = 0; m < modes; ++m) {
        ar[m] = coeff(rng);
        br[m] = coeff(rng);
        ai[m] = complex_phase ? coeff(rng) : 0.0;
        bi[m] = complex_phase ? coeff(rng) : 0.0;
        wr[m] = freq(rng);
    }
    Tabulated tab;
    const int samples = 1200;
    for (int i = 0; i < samples; ++i) {
        const double t = t_end * i / (samples - 1.0);
        double re = 0.0, im = 0.0;
        for (int m = 0; m < modes; ++m) {
            re += ar[m] * std::cos(wr[m] * t) + br[m] * std::sin(wr[m] * t);
            im += ai[m] * std::cos(wr[m] * t) + bi[m] * std::sin(wr[m] * t);
        }
        tab.times.push_back(t);
        tab.values.emplace_back(amplitude * re / modes, amplitude * im / modes);
    }
    return tab;
}

/// Plain fixed-step RK4 on the Riccati chart dz/dt = -i g + i sigma conj(g) z^2.
/// Independent of the production (a,b) integrator; valid away from z-poles.
inline cplx riccati_z(const std::function<cplx(double)>& gamma, int sigma, double t_end, int steps) {
    const cplx i{0.0, 1.0};
    auto f = [&](double t, cplx z) { return -i * gamma(t) + i * static_cast<double>(sigma) * std::conj(gamma(t)) * z * z; };
    cplx z = 0.0;
    const double h = t_end / steps;
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        const cplx k1 = f(t, z);
        const cplx k2 = f(t + h / 2, z + h / 2 * k1);
        const cplx k3 = f(t + h / 2, z + h / 2 * k2);
        const cplx k4 = f(t + h, z + h * k3);
        z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return z;
}

}  // namespace klie::testing
