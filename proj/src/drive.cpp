// drive.cpp — envelope evaluation, closed-form Cartan integrals, phase dressing

#include "krylov_lie/drive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "krylov_lie/quadrature.hpp"

namespace klie {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string("envelope parameter not finite: ") + what);
}

// quench helpers
double quench_omega(const PiecewiseConstantQuench& q, double t) {
    return (t > 0.0 && t < q.tau) ? q.omega1 : q.omega0;
}

// locate the tabulated segment containing t
std::size_t tab_segment(const Tabulated& tab, double t) {
    if (tab.times.size() < 2 || tab.times.size() != tab.values.size()) {
        throw std::invalid_argument("Tabulated: need >= 2 samples with matching values");
    }
    if (t < tab.times.front() || t > tab.times.back()) {
        throw std::domain_error("Tabulated: evaluation outside the tabulated domain");
    }
    const auto it = std::upper_bound(tab.times.begin(), tab.times.end(), t);
    std::size_t k = static_cast<std::size_t>(it - tab.times.begin());
    if (k == 0) k = 1;
    if (k == tab.times.size()) k = tab.times.size() - 1;
    return k - 1;  // segment [k-1, k]
}

cplx tab_value(const Tabulated& tab, double t) {
    const std::size_t k = tab_segment(tab, t);
    const double t0 = tab.times[k], t1 = tab.times[k + 1];
    if (!(t1 > t0)) throw std::invalid_argument("Tabulated: times must be strictly increasing");
    const double w = (t - t0) / (t1 - t0);
    return tab.values[k] * (1.0 - w) + tab.values[k + 1] * w;
}

// exact integral of the piecewise-linear interpolant from times.front() to t
cplx tab_integral(const Tabulated& tab, double t) {
    const std::size_t kend = tab_segment(tab, t);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < kend; ++k) {
        acc += 0.5 * (tab.values[k] + tab.values[k + 1]) * (tab.times[k + 1] - tab.times[k]);
    }
    const cplx vt = tab_value(tab, t);
    acc += 0.5 * (tab.values[kend] + vt) * (t - tab.times[kend]);
    return acc;
}

}  // namespace

ConstantPhase constant_amplitude(double r0, double delta) {
    check_finite(r0, "r0");
    check_finite(delta, "delta");
    ConstantPhase cp;
    cp.amplitude = [r0](double) { return r0; };
    cp.delta = delta;
    cp.amplitude_integral = [r0](double t) { return r0 * t; };
    return cp;
}

cplx drive_value(const EnvelopeForm& form, double t) {
    return std::visit(
        [t](const auto& f) -> cplx {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantPhase>) {
                if (!f.amplitude) throw std::invalid_argument("ConstantPhase: missing amplitude function");
                return f.amplitude(t) * std::exp(kI * f.delta);
            } else if constexpr (std::is_same_v<T, SechPulse>) {
                return f.omega0 / std::cosh(t / f.T);
            } else if constexpr (std::is_same_v<T, PiecewiseConstantQuench>) {
                const double w = quench_omega(f, t);
                return (w * w - f.omega0 * f.omega0) / (2.0 * f.omega0);
            } else if constexpr (std::is_same_v<T, RotatingField>) {
                return (f.h * std::sin(f.theta0) / 2.0) * std::exp(-kI * (f.Omega * t));
            } else if constexpr (std::is_same_v<T, DraggedCosine>) {
                return -std::sqrt(f.m * f.omega * f.omega * f.omega / 2.0) * f.x0 * std::cos(f.omega * t);
            } else {
                return tab_value(f, t);
            }
        },
        form);
}

double cartan_value(const EnvelopeForm& form, double t) {
    return std::visit(
        [t](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantPhase>) {
                if (f.delta != 0.0) throw std::invalid_argument("ConstantPhase as Cartan drive requires delta = 0");
                if (!f.amplitude) throw std::invalid_argument("ConstantPhase: missing amplitude function");
                return f.amplitude(t);
            } else if constexpr (std::is_same_v<T, SechPulse>) {
                return f.omega0 / std::cosh(t / f.T);
            } else if constexpr (std::is_same_v<T, PiecewiseConstantQuench>) {
                const double w = quench_omega(f, t);
                return (w * w + f.omega0 * f.omega0) / (2.0 * f.omega0);
            } else if constexpr (std::is_same_v<T, RotatingField>) {
                return f.h * std::cos(f.theta0);
            } else if constexpr (std::is_same_v<T, DraggedCosine>) {
                return f.omega;
            } else {
                const cplx v = tab_value(f, t);
                if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real()))) {
                    throw std::invalid_argument("Tabulated as Cartan drive requires real samples");
                }
                return v.real();
            }
        },
        form);
}

double cartan_integral(const EnvelopeForm& form, double t) {
    return std::visit(
        [t, &form](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConstantPhase>) {
                if (f.delta != 0.0) throw std::invalid_argument("ConstantPhase as Cartan drive requires delta = 0");
                if (f.amplitude_integral) return f.amplitude_integral(t);
                return integrate_adaptive([&f](double s) { return f.amplitude(s); }, 0.0, t, 1e-13);
            } else if constexpr (std::is_same_v<T, SechPulse>) {
                // int_0^t omega0 sech(s/T) ds = 2 omega0 T atan(tanh(t/(2T)))
                return 2.0 * f.omega0 * f.T * std::atan(std::tanh(t / (2.0 * f.T)));
            } else if constexpr (std::is_same_v<T, PiecewiseConstantQuench>) {
                const double g_quench = (f.omega1 * f.omega1 + f.omega0 * f.omega0) / (2.0 * f.omega0);
                if (t <= 0.0) return f.omega0 * t;
                if (t <= f.tau) return g_quench * t;
                return g_quench * f.tau + f.omega0 * (t - f.tau);
            } else if constexpr (std::is_same_v<T, RotatingField>) {
                return f.h * std::cos(f.theta0) * t;
            } else if constexpr (std::is_same_v<T, DraggedCosine>) {
                return f.omega * t;
            } else {
                (void)form;
                const cplx v = tab_integral(f, t) - tab_integral(f, 0.0);
                if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real()))) {
                    throw std::invalid_argument("Tabulated as Cartan drive requires real samples");
                }
                return v.real();
            }
        },
        form);
}

std::vector<double> form_breakpoints(const EnvelopeForm& form) {
    return std::visit(
        [](const auto& f) -> std::vector<double> {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PiecewiseConstantQuench>) {
                return {f.tau};
            } else if constexpr (std::is_same_v<T, Tabulated>) {
                std::vector<double> pts;
                for (double s : f.times)
                    if (s > 0.0) pts.push_back(s);
                return pts;
            } else {
                return {};
            }
        },
        form);
}

double cartan_phase(const DriveEnvelope& envelope, const std::vector<int>& cartan_row, double t) {
    if (cartan_row.size() != envelope.cartan_drives.size()) {
        throw std::invalid_argument("cartan_phase: cartan_row length must match number of cartan_drives");
    }
    double phi = 0.0;
    for (std::size_t l = 0; l < cartan_row.size(); ++l) {
        if (cartan_row[l] == 0) continue;
        phi += cartan_row[l] * cartan_integral(envelope.cartan_drives[l], t);
    }
    return phi;
}

cplx effective_coupling(const DriveEnvelope& envelope, const std::vector<int>& cartan_row, double t) {
    const double phi = cartan_phase(envelope, cartan_row, t);
    return std::exp(kI * phi) * drive_value(envelope.form, t);
}

std::vector<double> envelope_breakpoints(const DriveEnvelope& envelope) {
    std::vector<double> pts = form_breakpoints(envelope.form);
    for (const auto& g : envelope.cartan_drives) {
        const auto more = form_breakpoints(g);
        pts.insert(pts.end(), more.begin(), more.end());
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::function<cplx(double)> coupling_function(const DriveEnvelope& envelope, const std::vector<int>& cartan_row) {
    return [envelope, cartan_row](double t) { return effective_coupling(envelope, cartan_row, t); };
}

}  // namespace klie
