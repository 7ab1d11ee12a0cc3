// oracle.cpp — dense-matrix ground truth

#include "krylov_lie/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace klie::oracle {

namespace {

constexpr cplx kI{0.0, 1.0};

// exp of a strictly triangular (nilpotent) matrix: finite Taylor sum, exact
Eigen::MatrixXcd nilpotent_exp(const Eigen::MatrixXcd& n) {
    const Eigen::Index dim = n.rows();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(dim, dim);
    for (Eigen::Index k = 1; k < dim; ++k) {
        term = (term * n / static_cast<double>(k)).eval();
        if (term.cwiseAbs().maxCoeff() == 0.0) break;
        acc += term;
    }
    return acc;
}

}  // namespace

MatrixRep build_rep(const SectorSignature& sector, int dim_override) {
    MatrixRep rep;
    rep.sector = sector;
    const int dim = dim_override > 0 ? dim_override : sector.dim;
    if (sector.sigma == 1 && dim != sector.dim) {
        throw std::invalid_argument("build_rep: compact representations have fixed dimension 2j+1");
    }
    rep.sector.dim = dim;
    rep.Lp = Eigen::MatrixXcd::Zero(dim, dim);
    rep.L0 = Eigen::MatrixXcd::Zero(dim, dim);
    SectorSignature sized = sector;
    sized.dim = dim;
    for (int n = 0; n + 1 < dim; ++n) rep.Lp(n + 1, n) = lanczos_b(sized, n + 1);
    for (int n = 0; n < dim; ++n) {
        rep.L0(n, n) = sector.sigma == 0 ? static_cast<double>(n) : sector.lowest_weight + n;
    }
    rep.Lm = rep.Lp.adjoint();
    return rep;
}

double commutator_defect(const MatrixRep& rep) {
    const Eigen::Index dim = rep.Lp.rows();
    Eigen::MatrixXcd defect;
    if (rep.sector.sigma == 0) {
        defect = rep.Lm * rep.Lp - rep.Lp * rep.Lm - Eigen::MatrixXcd::Identity(dim, dim);
    } else {
        defect = rep.Lp * rep.Lm - rep.Lm * rep.Lp - 2.0 * static_cast<double>(rep.sector.sigma) * rep.L0;
    }
    const Eigen::Index last = dim - 1;
    double max_abs = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            if (rep.sector.sigma != 1 && (i == last || j == last)) continue;  // truncation boundary
            max_abs = std::max(max_abs, std::abs(defect(i, j)));
        }
    }
    return max_abs;
}

std::vector<Eigen::VectorXcd> direct_evolve(const MatrixRep& rep, const std::function<cplx(double)>& gamma,
                                            const std::vector<double>& grid, double steps_per_unit) {
    if (grid.empty()) throw std::invalid_argument("direct_evolve: empty grid");
    if (!(steps_per_unit > 0.0)) throw std::invalid_argument("direct_evolve: steps_per_unit must be > 0");
    const Eigen::Index dim = rep.Lp.rows();

    // H(t) = |gamma| D(theta) (Lp + Lm) D(theta)^dag with D = diag(e^{i n theta}),
    // theta = arg gamma: one eigendecomposition of the fixed quadrature serves
    // every step.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rep.Lp + rep.Lm);
    if (eig.info() != Eigen::Success) throw std::runtime_error("direct_evolve: eigendecomposition failed");
    const Eigen::MatrixXcd& v = eig.eigenvectors();
    const Eigen::VectorXd& lam = eig.eigenvalues();

    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(dim);
    state[0] = 1.0;

    std::vector<Eigen::VectorXcd> out;
    out.reserve(grid.size());
    out.push_back(state);

    Eigen::VectorXcd phased(dim), mixed(dim);
    for (std::size_t gi = 1; gi < grid.size(); ++gi) {
        const double t0 = grid[gi - 1];
        const double t1 = grid[gi];
        const int steps = std::max(1, static_cast<int>(std::ceil((t1 - t0) * steps_per_unit - 1e-12)));
        const double dt = (t1 - t0) / steps;
        for (int s = 0; s < steps; ++s) {
            const double tm = t0 + (s + 0.5) * dt;
            const cplx g = gamma(tm);
            const double mag = std::abs(g);
            const double theta = std::arg(g);
            if (mag == 0.0) continue;
            for (Eigen::Index n = 0; n < dim; ++n) {
                phased[n] = std::exp(-kI * (theta * static_cast<double>(n))) * state[n];
            }
            mixed.noalias() = v.adjoint() * phased;
            for (Eigen::Index m = 0; m < dim; ++m) mixed[m] *= std::exp(-kI * (dt * mag * lam[m]));
            phased.noalias() = v * mixed;
            for (Eigen::Index n = 0; n < dim; ++n) {
                state[n] = std::exp(kI * (theta * static_cast<double>(n))) * phased[n];
            }
        }
        out.push_back(state);
    }
    return out;
}

std::vector<Eigen::VectorXcd> direct_evolve_plain(const MatrixRep& rep,
                                                  const std::function<cplx(double)>& gamma,
                                                  const std::vector<double>& grid, double steps_per_unit) {
    const Eigen::Index dim = rep.Lp.rows();
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(dim);
    state[0] = 1.0;
    std::vector<Eigen::VectorXcd> out;
    out.reserve(grid.size());
    out.push_back(state);
    for (std::size_t gi = 1; gi < grid.size(); ++gi) {
        const double t0 = grid[gi - 1];
        const double t1 = grid[gi];
        const int steps = std::max(1, static_cast<int>(std::ceil((t1 - t0) * steps_per_unit - 1e-12)));
        const double dt = (t1 - t0) / steps;
        for (int s = 0; s < steps; ++s) {
            const double tm = t0 + (s + 0.5) * dt;
            const cplx g = gamma(tm);
            const Eigen::MatrixXcd h = g * rep.Lp + std::conj(g) * rep.Lm;
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
            Eigen::VectorXcd mixed = eig.eigenvectors().adjoint() * state;
            for (Eigen::Index m = 0; m < dim; ++m) {
                mixed[m] *= std::exp(-kI * (dt * eig.eigenvalues()[m]));
            }
            state = eig.eigenvectors() * mixed;
        }
        out.push_back(state);
    }
    return out;
}

LanczosResult hermitian_lanczos(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& v0, int m) {
    const Eigen::Index dim = h.rows();
    if (h.cols() != dim) throw std::invalid_argument("hermitian_lanczos: matrix must be square");
    if (v0.size() != dim) throw std::invalid_argument("hermitian_lanczos: v0 dimension mismatch");
    if (m < 1 || m > dim) throw std::invalid_argument("hermitian_lanczos: need 1 <= m <= dim");

    LanczosResult res;
    res.a = Eigen::VectorXd::Zero(m);
    res.b = Eigen::VectorXd::Zero(m);
    res.basis = Eigen::MatrixXcd::Zero(dim, m);

    Eigen::VectorXcd q = v0.normalized();
    res.basis.col(0) = q;
    Eigen::VectorXcd q_prev = Eigen::VectorXcd::Zero(dim);
    double b_prev = 0.0;
    res.krylov_dim = m;

    for (int k = 0; k < m; ++k) {
        Eigen::VectorXcd w = h * q;
        const double a_k = std::real(q.dot(w));
        res.a[k] = a_k;
        w -= a_k * q;
        if (k > 0) w -= b_prev * q_prev;
        // full reorthogonalization (twice is enough)
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i <= k; ++i) {
                const cplx overlap = res.basis.col(i).dot(w);
                w -= overlap * res.basis.col(i);
            }
        }
        const double b_k = w.norm();
        if (k + 1 < m) res.b[k] = b_k;
        if (b_k < 1e-12) {
            res.krylov_dim = k + 1;
            break;
        }
        if (k + 1 == m) break;
        q_prev = q;
        q = w / b_k;
        res.basis.col(k + 1) = q;
        b_prev = b_k;
    }
    return res;
}

Eigen::MatrixXcd wn_product_matrix(const MatrixRep& rep, const WNState& wn) {
    const Eigen::Index dim = rep.Lp.rows();
    // assembled from (a, b): e^{eta L0} = diag(a^{-2(lambda+n)}) with the
    // trajectory's eta branch for non-integer weights
    Eigen::MatrixXcd mid = Eigen::MatrixXcd::Zero(dim, dim);
    const double lambda = rep.sector.sigma == 0 ? 0.0 : rep.sector.lowest_weight;
    for (Eigen::Index n = 0; n < dim; ++n) {
        mid(n, n) = std::exp(wn.eta * (lambda + static_cast<double>(n)));
    }
    const Eigen::MatrixXcd left = nilpotent_exp(wn.z * rep.Lp);
    const Eigen::MatrixXcd right = nilpotent_exp(wn.w * rep.Lm);
    return left * mid * right;
}

Eigen::MatrixXcd generator_matrix(const MatrixRep& rep, const GeneratorParams& params) {
    return params.theta0 * rep.L0 + params.theta_plus * rep.Lp + params.theta_minus * rep.Lm;
}

Eigen::MatrixXcd generator_exponential(const MatrixRep& rep, const GeneratorParams& params) {
    const Eigen::MatrixXcd g = generator_matrix(rep, params);
    if (params.hermitian) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g);
        Eigen::VectorXcd ph(g.rows());
        for (Eigen::Index m = 0; m < g.rows(); ++m) ph[m] = std::exp(-kI * cplx(eig.eigenvalues()[m], 0.0));
        return eig.eigenvectors() * ph.asDiagonal() * eig.eigenvectors().adjoint();
    }
    return Eigen::MatrixXcd((-kI * g).exp());
}

Eigen::MatrixXcd hw_generator_matrix(const MatrixRep& rep, const HWDisplacement& disp) {
    const Eigen::Index dim = rep.Lp.rows();
    return -disp.phi * Eigen::MatrixXcd::Identity(dim, dim) + disp.alpha * rep.Lp +
           std::conj(disp.alpha) * rep.Lm;
}

Eigen::MatrixXcd hw_product_matrix(const MatrixRep& rep, const HWDisplacement& disp) {
    const cplx scale = std::exp(kI * disp.phi - 0.5 * std::norm(disp.alpha));
    return scale * nilpotent_exp(-kI * disp.alpha * rep.Lp) *
           nilpotent_exp(-kI * std::conj(disp.alpha) * rep.Lm);
}

GaugeCheckResult gauge_check(const SectorSignature& sector, const std::vector<KrylovWavefunction>& series,
                             const std::function<cplx(double)>& gamma,
                             const std::function<double(double)>& phi_alpha) {
    if (series.size() < 3) throw std::invalid_argument("gauge_check: need at least 3 samples");
    const double h = series[1].t - series[0].t;
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (std::abs(series[i].t - series[i - 1].t - h) > 1e-9 * std::max(1.0, std::abs(h))) {
            throw std::invalid_argument("gauge_check: series must be uniformly sampled");
        }
    }
    const int dim = sector.dim;

    auto hatted = [&](std::size_t i) {
        Eigen::VectorXcd hat(dim);
        const double phi = phi_alpha(series[i].t);
        for (int n = 0; n < dim; ++n) {
            hat[n] = std::exp(-kI * (phi * static_cast<double>(n))) * series[i].amplitudes[n];
        }
        return hat;
    };

    GaugeCheckResult res;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const Eigen::VectorXcd hat = hatted(i);
        for (int n = 0; n < dim; ++n) {
            res.max_modulus_deviation = std::max(
                res.max_modulus_deviation,
                std::abs(std::abs(hat[n]) - std::abs(series[i].amplitudes[n])));
        }
    }

    // centered-difference generator of the naive basis: the diagonal must be
    // the gauge term n dphi/dt on top of the bare-coupling hopping
    for (std::size_t i = 1; i + 1 < series.size(); ++i) {
        const Eigen::VectorXcd prev = hatted(i - 1);
        const Eigen::VectorXcd curr = hatted(i);
        const Eigen::VectorXcd next = hatted(i + 1);
        const double t = series[i].t;
        const cplx f = gamma(t) * std::exp(-kI * phi_alpha(t));
        const double dphi = (phi_alpha(t + h) - phi_alpha(t - h)) / (2.0 * h);
        for (int n = 0; n < dim; ++n) {
            if (std::abs(curr[n]) < 1e-6) continue;  // diagonal ill-defined on nodes
            cplx rhs = kI * (next[n] - prev[n]) / (2.0 * h);
            if (n > 0) rhs -= f * lanczos_b(sector, n) * curr[n - 1];
            if (n + 1 < dim) rhs -= std::conj(f) * lanczos_b(sector, n + 1) * curr[n + 1];
            const cplx diag = rhs / curr[n];
            res.max_diagonal_residual =
                std::max(res.max_diagonal_residual, std::abs(diag - cplx(n * dphi, 0.0)));
        }
    }
    return res;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace klie::oracle
