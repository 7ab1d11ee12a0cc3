// weinorman.cpp — (a,b) chart integration and the exact drive solutions

#include "krylov_lie/weinorman.hpp"

#include <cmath>
#include <stdexcept>

#include "krylov_lie/ode.hpp"

namespace klie {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = 3.141592653589793238462643383279502884;

double wrap_to_nearest(double value, double target, double period) {
    return value + period * std::round((target - value) / period);
}

// Continuous argument of (cos(theta) + i r sin(theta)) with value 0 at
// theta = 0; for r != 0 the curve winds sign(r) turns per period.
double ellipse_arg(double theta, double r) {
    const double k = std::round(theta / (2.0 * kPi));
    const double theta_p = theta - 2.0 * kPi * k;
    double base = std::atan2(r * std::sin(theta_p), std::cos(theta_p));
    if (theta_p == kPi && base < 0.0) base = kPi;  // approach the cut from above
    const double winding = (r > 0.0) ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
    return base + 2.0 * kPi * k * winding;
}

}  // namespace

ProjectiveState projective_from_wn(const WNState& wn, cplx gamma_t, int sigma) {
    ProjectiveState p;
    p.t = wn.t;
    p.u = wn.a;
    p.u_dot = -kI * static_cast<double>(sigma) * std::conj(gamma_t) * wn.b;
    return p;
}

WNState wn_from_ab(double t, cplx a, cplx b, double im_eta_hint) {
    WNState s;
    s.t = t;
    s.a = a;
    s.b = b;
    const double mag = std::abs(a);
    if (mag == 0.0) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        s.z = cplx(nan, nan);
        s.w = cplx(nan, nan);
        s.eta = cplx(std::numeric_limits<double>::infinity(), nan);
        return s;
    }
    s.z = b / a;
    s.w = -std::conj(b) / a;
    const double im = wrap_to_nearest(-2.0 * std::arg(a), im_eta_hint, 4.0 * kPi);
    s.eta = cplx(-2.0 * std::log(mag), im);
    return s;
}

std::vector<WNState> integrate_wn(const SectorSignature& sector, const std::function<cplx(double)>& gamma,
                                  const std::vector<double>& grid, double tol,
                                  const std::vector<double>& stops) {
    if (sector.sigma == 0) throw std::invalid_argument("integrate_wn: use hw_displacement for sigma = 0");
    if (grid.empty() || grid.front() != 0.0) throw std::invalid_argument("integrate_wn: grid must start at 0");
    if (!(tol > 0.0)) throw std::invalid_argument("integrate_wn: tol must be > 0");
    const double sigma = sector.sigma;

    using Vec = Eigen::Vector2cd;
    OdeOptions opts;
    opts.rel_tol = tol;
    opts.abs_tol = tol * 1e-2;

    std::vector<WNState> out(grid.size());
    // eta's imaginary part is unwrapped against the previously emitted sample;
    // grid spacing is assumed fine enough that arg(a) moves < 2pi per sample.
    double im_eta_prev = 0.0;
    auto rhs = [&gamma, sigma](double t, const Vec& y) -> Vec {
        const cplx g = gamma(t);
        return Vec(-kI * sigma * std::conj(g) * y[1], -kI * g * y[0]);
    };
    auto emit = [&](std::size_t i, double t, const Vec& y) {
        if (sigma < 0.0) {
            const double za = std::abs(y[1] / y[0]);
            if (za >= 1.0 - 1e-12) {
                throw std::runtime_error("integrate_wn: su(1,1) trajectory reached |z| >= 1 - 1e-12 (truncation breakdown)");
            }
        }
        out[i] = wn_from_ab(t, y[0], y[1], im_eta_prev);
        im_eta_prev = out[i].eta.imag();
    };
    integrate_ode_grid(rhs, Vec(1.0, 0.0), grid, stops, opts, emit);
    return out;
}

std::vector<WNState> integrate_wn(const SectorSignature& sector, const DriveEnvelope& envelope,
                                  const std::vector<int>& cartan_row, const std::vector<double>& grid,
                                  double tol) {
    return integrate_wn(sector, coupling_function(envelope, cartan_row), grid, tol,
                        envelope_breakpoints(envelope));
}

WNState closed_form_quench(double omega0, double omega1, double t, double tau) {
    if (!(omega0 > 0.0) || !(omega1 > 0.0)) {
        throw std::invalid_argument("closed_form_quench: omega0, omega1 must be > 0");
    }
    const double f0 = (omega1 * omega1 - omega0 * omega0) / (4.0 * omega0);
    const double g0 = (omega1 * omega1 + omega0 * omega0) / (2.0 * omega0);
    const double tq = std::min(t, tau);
    const double th = omega1 * tq;
    const double r = g0 / omega1;  // >= 1
    const cplx u = cplx(std::cos(th), r * std::sin(th));
    const cplx a = std::exp(-kI * (g0 * tq)) * u;
    const cplx b = -2.0 * kI * f0 * std::exp(kI * (g0 * tq)) * std::sin(th) / omega1;

    WNState s = wn_from_ab(t, a, b);
    // branch-continuous eta = 2i g0 t - 2 Log u
    s.eta = cplx(-2.0 * std::log(std::abs(u)), 2.0 * g0 * tq - 2.0 * ellipse_arg(th, r));
    return s;
}

WNState closed_form_rotating(double theta0, double Omega, double t) {
    const double delta = Omega - std::cos(theta0);
    const double rabi = std::hypot(delta, std::sin(theta0));
    const double th = rabi * t / 2.0;
    const double sn = std::sin(th), cs = std::cos(th);
    const double r = rabi > 0.0 ? delta / rabi : 0.0;
    const cplx d = cplx(cs, -r * sn);
    const cplx a = std::exp(kI * (delta * t / 2.0)) * d;
    // sin(rabi t/2)/rabi -> t/2 as rabi -> 0
    const double s_over_rabi = rabi > 1e-300 ? sn / rabi : t / 2.0;
    const cplx b = -kI * std::sin(theta0) * std::exp(-kI * (delta * t / 2.0)) * s_over_rabi;

    WNState s = wn_from_ab(t, a, b);
    s.eta = cplx(-2.0 * std::log(std::abs(d)), -delta * t - 2.0 * ellipse_arg(th, -r));
    if (std::abs(a) == 0.0) s.eta = cplx(std::numeric_limits<double>::infinity(), 0.0);
    return s;
}

WNState closed_form_constant_phase(int sigma, double delta, double pulse_area) {
    if (sigma != 1 && sigma != -1) {
        throw std::invalid_argument("closed_form_constant_phase: sigma must be +1 or -1");
    }
    const double r = pulse_area;
    cplx a, b;
    if (sigma == 1) {
        a = std::cos(r);
        b = -kI * std::exp(kI * delta) * std::sin(r);
    } else {
        a = std::cosh(r);
        b = -kI * std::exp(kI * delta) * std::sinh(r);
    }
    return wn_from_ab(0.0, a, b);
}

std::vector<HWDisplacement> hw_displacement(const std::function<cplx(double)>& gamma,
                                            const std::vector<double>& grid, double tol,
                                            const std::vector<double>& stops) {
    if (grid.empty() || grid.front() != 0.0) throw std::invalid_argument("hw_displacement: grid must start at 0");
    using Vec = Eigen::Vector2cd;  // (alpha, phi)
    OdeOptions opts;
    opts.rel_tol = tol;
    opts.abs_tol = tol * 1e-2;
    std::vector<HWDisplacement> out(grid.size());
    auto rhs = [&gamma](double t, const Vec& y) -> Vec {
        const cplx g = gamma(t);
        return Vec(g, std::imag(g * std::conj(y[0])));
    };
    auto emit = [&out](std::size_t i, double t, const Vec& y) {
        out[i] = HWDisplacement{y[0], y[1].real(), t};
    };
    integrate_ode_grid(rhs, Vec(0.0, 0.0), grid, stops, opts, emit);
    return out;
}

}  // namespace klie
