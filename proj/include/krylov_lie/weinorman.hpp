// weinorman.hpp — Wei-Norman factorization of the ladder-pair evolution.
//
// The ordered product U(t) = e^{z L+} e^{eta L0} e^{w L-} is integrated through
// the globally regular pair (a, b) = (e^{-eta/2}, z e^{-eta/2}), whose flow is
// the linear defining-representation system
//     da/dt = -i sigma conj(gamma) b,     db/dt = -i gamma a,
// preserving |a|^2 + sigma |b|^2 = 1. The Riccati variables are derived views:
// z = b/a, w = -conj(b)/a, eta = -2 log a with the imaginary part unwrapped
// along the trajectory.

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "krylov_lie/algebra.hpp"
#include "krylov_lie/drive.hpp"

namespace klie {

struct WNState {
    double t = 0.0;
    cplx z{0.0, 0.0};
    cplx eta{0.0, 0.0};  // branch-continuous along the trajectory
    cplx w{0.0, 0.0};
    cplx a{1.0, 0.0};    // e^{-eta/2}
    cplx b{0.0, 0.0};    // z e^{-eta/2}
};

/// Pole-safe projective chart: u = a, u_dot = -i sigma conj(gamma) b, so that
/// z = -u_dot / (i sigma conj(gamma) u) wherever gamma != 0.
struct ProjectiveState {
    cplx u{1.0, 0.0};
    cplx u_dot{0.0, 0.0};
    double t = 0.0;
};

ProjectiveState projective_from_wn(const WNState& wn, cplx gamma_t, int sigma);

/// Heisenberg-Weyl displacement data: alpha(t) = int_0^t gamma and the
/// ordering phase phi(t) = int_0^t dt1 int_0^t1 dt2 Im[gamma(t1) conj(gamma(t2))].
struct HWDisplacement {
    cplx alpha{0.0, 0.0};
    double phi = 0.0;
    double t = 0.0;
};

/// Builds a WNState from the regular pair; eta_hint selects the unwrapped
/// branch (Im eta is chosen nearest the hint).
WNState wn_from_ab(double t, cplx a, cplx b, double im_eta_hint = 0.0);

/// Integrates the Wei-Norman system for sigma = +1/-1 over an ascending grid
/// starting at 0 with z(0) = eta(0) = w(0) = 0. `stops` are forced step
/// boundaries for non-smooth drives. Throws when a sigma = -1 trajectory
/// reaches |z| >= 1 - 1e-12.
std::vector<WNState> integrate_wn(const SectorSignature& sector, const std::function<cplx(double)>& gamma,
                                  const std::vector<double>& grid, double tol = 1e-10,
                                  const std::vector<double>& stops = {});

/// Envelope-aware overload (collects breakpoints automatically).
std::vector<WNState> integrate_wn(const SectorSignature& sector, const DriveEnvelope& envelope,
                                  const std::vector<int>& cartan_row, const std::vector<double>& grid,
                                  double tol = 1e-10);

/// Exact frequency-quench solution (omega0 -> omega1 on (0,tau) -> omega0);
/// frozen at tau for t > tau. Branch-continuous eta.
WNState closed_form_quench(double omega0, double omega1, double t,
                           double tau = std::numeric_limits<double>::infinity());

/// Exact rotating-field solution (theta0, Omega, h = 1 convention).
WNState closed_form_rotating(double theta0, double Omega, double t);

/// Exact constant-phase solution gamma = e^{i delta} r(t) with pulse area
/// R = int_0^t r: z = -i e^{i delta} tan_sigma(R).
WNState closed_form_constant_phase(int sigma, double delta, double pulse_area);

/// alpha and phi for sigma = 0 via the coupled system alpha' = gamma,
/// phi' = Im[gamma conj(alpha)].
std::vector<HWDisplacement> hw_displacement(const std::function<cplx(double)>& gamma,
                                            const std::vector<double>& grid, double tol = 1e-10,
                                            const std::vector<double>& stops = {});

}  // namespace klie
