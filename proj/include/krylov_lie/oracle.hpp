// oracle.hpp — brute-force ground truth: explicit matrix representations,
// direct time-ordered evolution, generic Hermitian Lanczos, and the
// moving-basis gauge check. Everything here is independent of the closed-form
// pipeline it validates.

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "krylov_lie/algebra.hpp"
#include "krylov_lie/generator.hpp"
#include "krylov_lie/krylov.hpp"
#include "krylov_lie/weinorman.hpp"

namespace klie::oracle {

struct MatrixRep {
    SectorSignature sector;
    Eigen::MatrixXcd Lp, Lm, L0;
};

/// Ladder matrices with subdiagonal b_{n+1} on Lp, Lm = Lp^dag, and
/// L0 = diag(lambda + n) (sigma = +-1) or the number operator (sigma = 0).
/// `dim_override` inflates the truncation (oracle runs use 2x).
MatrixRep build_rep(const SectorSignature& sector, int dim_override = 0);

/// Max commutator defect: [Lp, Lm] - 2 sigma L0 for sigma = +-1, or
/// [Lm, Lp] - I for sigma = 0, excluding the truncation boundary
/// row/column for sigma in {-1, 0}.
double commutator_defect(const MatrixRep& rep);

/// Midpoint-exponential evolution of e_0 under H(t) = gamma Lp + gamma* Lm:
/// per step U = exp(-i dt H(t_mid)) through a Hermitian eigendecomposition of
/// the fixed quadrature Lp + Lm (the drive phase enters as a diagonal
/// rephasing). Second-order accurate in dt, norm-preserving to roundoff.
std::vector<Eigen::VectorXcd> direct_evolve(const MatrixRep& rep, const std::function<cplx(double)>& gamma,
                                            const std::vector<double>& grid, double steps_per_unit);

/// Plain per-step eigendecomposition variant (small dims; certifies the
/// rephased fast path).
std::vector<Eigen::VectorXcd> direct_evolve_plain(const MatrixRep& rep,
                                                  const std::function<cplx(double)>& gamma,
                                                  const std::vector<double>& grid, double steps_per_unit);

struct LanczosResult {
    Eigen::VectorXd a;       // diagonal coefficients
    Eigen::VectorXd b;       // off-diagonal b_1..b_m (b_k = 0 past termination)
    Eigen::MatrixXcd basis;  // orthonormal Krylov vectors (columns)
    int krylov_dim = 0;
};

/// Three-term recursion with full reorthogonalization; terminates early when
/// b_k < 1e-12 and reports the Krylov dimension.
LanczosResult hermitian_lanczos(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& v0, int m);

/// Dense matrices of the Wei-Norman product e^{z Lp} e^{eta L0} e^{w Lm} and
/// the generator G; the nilpotent exponentials are finite Taylor sums (exact),
/// assembled from the regular pair so sigma = +1 poles are harmless.
Eigen::MatrixXcd wn_product_matrix(const MatrixRep& rep, const WNState& wn);
Eigen::MatrixXcd generator_matrix(const MatrixRep& rep, const GeneratorParams& params);
/// exp(-i G) via Hermitian eigendecomposition (Pade for continuations).
Eigen::MatrixXcd generator_exponential(const MatrixRep& rep, const GeneratorParams& params);

/// Heisenberg-Weyl analogues: G = -phi + alpha a^dag + alpha* a and the
/// displacement product e^{i phi - |alpha|^2/2} e^{-i alpha a^dag} e^{-i alpha* a}.
Eigen::MatrixXcd hw_generator_matrix(const MatrixRep& rep, const HWDisplacement& disp);
Eigen::MatrixXcd hw_product_matrix(const MatrixRep& rep, const HWDisplacement& disp);

struct GaugeCheckResult {
    double max_modulus_deviation = 0.0;  // max | |phi_hat_n| - |phi_n| |
    double max_diagonal_residual = 0.0;  // max_n |diag_n - n dphi/dt|
};

/// Appendix-style moving-basis check: the naive moving basis multiplies
/// amplitudes by e^{-i n phi_alpha(t)} (probabilities unchanged) and its
/// finite-difference generator acquires the diagonal gauge term n dphi/dt.
/// `series` must be sampled on a uniform grid fine enough for centered
/// differences; interior points are tested.
GaugeCheckResult gauge_check(const SectorSignature& sector, const std::vector<KrylovWavefunction>& series,
                             const std::function<cplx(double)>& gamma,
                             const std::function<double(double)>& phi_alpha);

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace klie::oracle
