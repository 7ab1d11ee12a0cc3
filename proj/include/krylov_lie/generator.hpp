// generator.hpp — single-exponential generator of the evolution operator.
//
// U(t) = exp(-i G(t)) with G = Theta0 L0 + Theta+ L+ + Theta- L- in the same
// rank-one algebra. On the Hermitian domain Theta0 is real and
// Theta- = conj(Theta+). Non-compact trajectories with a rotating drive phase
// can leave the group-exponential image (defining-rep trace < -2); there the
// algebra logarithm continues with complex Theta0 and independent Theta-,
// flagged by `hermitian = false`. chi^2 = sigma Theta+ Theta- + Theta0^2/4.

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "krylov_lie/algebra.hpp"
#include "krylov_lie/weinorman.hpp"

namespace klie {

struct GeneratorParams {
    cplx theta0{0.0, 0.0};
    cplx theta_plus{0.0, 0.0};
    cplx theta_minus{0.0, 0.0};
    cplx chi{0.0, 0.0};
    int branch_index = 0;   // round(Re chi / pi), continuity bookkeeping
    bool hermitian = true;  // Theta0 real and Theta- = conj(Theta+)
};

/// Hermitian constructor: chi = sqrt(sigma |Theta+|^2 + Theta0^2/4).
GeneratorParams make_generator(double theta0, cplx theta_plus, int sigma);

/// Wei-Norman data of exp(-i G): a = cos chi + i (Theta0/2) sinc(chi),
/// b = -i Theta+ sinc(chi), w b-side from Theta-. The chi -> 0 limit is taken
/// by series. At a sigma=+1 pole of z (a = 0) the returned state still carries
/// the regular pair (a, b); z, w, eta are NaN-marked there.
WNState disentangle(const GeneratorParams& params, int sigma);

/// Recovers the generator from Wei-Norman data. The arctangent branch is
/// selected by matching the s-continuous disentangled eta(1) against the
/// trajectory's branch-continuous wn.eta (defining-rep data alone cannot
/// distinguish covering-group branches). `prev` seeds the candidate search.
/// The unitarity defect |(|a|^2 + sigma |b|^2) - 1| must stay below 1e-8
/// (input renormalized, defect reported via defect_out).
GeneratorParams invert(const WNState& wn, int sigma,
                       const std::optional<GeneratorParams>& prev = std::nullopt,
                       double* defect_out = nullptr);

/// Trajectory-ordered inversion (seeds each point with the previous one).
std::vector<GeneratorParams> invert_series(const std::vector<WNState>& trajectory, int sigma);

/// Constant-coefficient tridiagonal chain of G in the sector representation:
/// diag a_n = Theta0 (lambda + n), subdiagonal Theta+ b_{n+1}, superdiagonal
/// Theta- b_{n+1}; psi holds the fictitious-time state at s.
struct FictitiousChain {
    Eigen::VectorXcd diag;
    Eigen::VectorXcd sub;    // coupling K_n -> K_{n+1} (Theta+ b_{n+1})
    Eigen::VectorXcd super;  // coupling K_{n+1} -> K_n (Theta- b_{n+1})
    Eigen::VectorXcd psi;
    double s = 0.0;
};

/// Chain skeleton (psi unset) for a sigma = +-1 sector.
FictitiousChain build_chain(const SectorSignature& sector, const GeneratorParams& params);

/// Heisenberg-Weyl chain: diag a_n = -phi, couplings alpha sqrt(n).
FictitiousChain build_hw_chain(const HWDisplacement& disp, int dim);

/// Evolves psi(0) = e_0 through i dpsi/ds = G psi, sampling the ascending
/// s_grid in [0, 1]. Hermitian chains use an exact eigendecomposition
/// propagator; non-Hermitian continuations use a dense matrix exponential.
/// Theta+ = 0 short-circuits to psi_n(s) = delta_{n0} e^{-i s a_0}.
std::vector<FictitiousChain> chain_evolve(const FictitiousChain& chain, const std::vector<double>& s_grid);

std::vector<FictitiousChain> chain_evolve(const SectorSignature& sector, const GeneratorParams& params,
                                          const std::vector<double>& s_grid, double tol = 1e-12);

/// Removes the common coupling phase: psi_n -> e^{-i n arg(Theta+)} psi_n,
/// making the couplings real nonnegative. Probabilities are unchanged.
FictitiousChain rephase_gauge(const FictitiousChain& chain);

/// Truncation size at which the mid-s support of the chain state has decayed
/// below ~1e-12, sampled from the disentangled |Z(s)| profile. Returns 0 when
/// no finite truncation converges (non-Hermitian window with |Z(s)| >= 1).
int chain_support_dim(const SectorSignature& sector, const GeneratorParams& params, int min_dim);

}  // namespace klie
