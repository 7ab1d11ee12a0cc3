// drive.hpp — time-dependent coupling envelopes and Cartan-phase dressing.
//
// An EnvelopeForm plays two roles. As the ladder coupling it evaluates to the
// complex coefficient f(t) multiplying L_+. As a Cartan drive it evaluates to
// the real function g(t) appropriate to the protocol the tag describes (with
// an exact closed-form antiderivative), so that the dressed coupling is
//   gamma(t) = exp(i * sum_l row_l * int_0^t g_l) * f(t).

#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <vector>

namespace klie {

using cplx = std::complex<double>;

/// f(t) = r(t) e^{i delta} with real amplitude r(t). When an antiderivative of
/// r is not supplied, Cartan integrals fall back to adaptive Gauss-Kronrod.
struct ConstantPhase {
    std::function<double(double)> amplitude;
    double delta = 0.0;
    std::function<double(double)> amplitude_integral;  // optional: int_0^t r
};

/// Convenience: constant amplitude r0 (exact integral r0*t).
ConstantPhase constant_amplitude(double r0, double delta = 0.0);

/// f(t) = omega0 * sech(t/T); as a Cartan drive g(t) = f(t).
struct SechPulse {
    double omega0 = 1.0;
    double T = 1.0;
};

/// Frequency quench omega0 -> omega1 on (0, tau) -> omega0. Ladder coupling
/// f(t) = (omega(t)^2 - omega0^2)/(2 omega0); Cartan drive
/// g(t) = (omega(t)^2 + omega0^2)/(2 omega0).
struct PiecewiseConstantQuench {
    double omega0 = 1.0;
    double omega1 = 2.0;
    double tau = 10.0;
};

/// Spin in a rotating field at polar angle theta0, azimuthal rate Omega,
/// magnitude h: f(t) = (h sin(theta0)/2) e^{-i Omega t}; Cartan drive
/// g(t) = h cos(theta0).
struct RotatingField {
    double theta0 = 1.5707963267948966;
    double Omega = 1.0;
    double h = 1.0;
};

/// Harmonically dragged oscillator, x0(t) = x0 cos(omega t):
/// f(t) = -sqrt(m omega^3 / 2) x0 cos(omega t); Cartan drive g(t) = omega.
struct DraggedCosine {
    double x0 = 0.5;
    double omega = 2.0;
    double m = 1.0;
};

/// Piecewise-linear interpolation of complex samples on strictly increasing
/// times. Evaluation outside [times.front(), times.back()] throws.
struct Tabulated {
    std::vector<double> times;
    std::vector<cplx> values;
};

using EnvelopeForm =
    std::variant<ConstantPhase, SechPulse, PiecewiseConstantQuench, RotatingField, DraggedCosine, Tabulated>;

struct DriveEnvelope {
    EnvelopeForm form;
    std::vector<EnvelopeForm> cartan_drives;
};

/// Complex ladder coefficient f(t) of the form.
cplx drive_value(const EnvelopeForm& form, double t);

/// Real Cartan-drive value g(t) of the form (see per-tag docs above).
double cartan_value(const EnvelopeForm& form, double t);

/// Exact (closed-form where available) int_0^t g.
double cartan_integral(const EnvelopeForm& form, double t);

/// Times in (0, inf) where the form is non-smooth; integrators split there.
std::vector<double> form_breakpoints(const EnvelopeForm& form);

/// phi(t) = sum_l row_l * int_0^t g_l for the envelope's Cartan drives.
double cartan_phase(const DriveEnvelope& envelope, const std::vector<int>& cartan_row, double t);

/// gamma(t) = e^{i phi(t)} f(t).
cplx effective_coupling(const DriveEnvelope& envelope, const std::vector<int>& cartan_row, double t);

std::vector<double> envelope_breakpoints(const DriveEnvelope& envelope);

/// Closure evaluating gamma(t); the workhorse handed to the integrators.
std::function<cplx(double)> coupling_function(const DriveEnvelope& envelope, const std::vector<int>& cartan_row);

}  // namespace klie
