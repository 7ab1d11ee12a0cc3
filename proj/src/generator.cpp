// generator.cpp — disentangling, branch-matched inversion, fictitious chain

#include "krylov_lie/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace klie {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = 3.141592653589793238462643383279502884;

cplx sinc_c(cplx x) {  // sin(x)/x with series switch near 0
    if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
    return std::sin(x) / x;
}

// (a, b) of exp(-i s G) from the closed disentangling formulas
std::pair<cplx, cplx> ab_at_s(const GeneratorParams& p, double s) {
    const cplx xs = p.chi * s;
    const cplx sc = sinc_c(xs) * s;  // sin(chi s)/chi
    const cplx a = std::cos(xs) + kI * (p.theta0 / 2.0) * sc;
    const cplx b = -kI * p.theta_plus * sc;
    return {a, b};
}

// s-continuous Im of the disentangled eta(1) = -2 Log a(s)|_{s=1}, tracked by
// unwrapping arg a(s) along [0, 1]
double im_eta_disentangled(const GeneratorParams& p, int samples = 256) {
    double acc = 0.0;
    cplx prev{1.0, 0.0};
    for (int i = 1; i <= samples; ++i) {
        const auto [a, b] = ab_at_s(p, static_cast<double>(i) / samples);
        (void)b;
        if (std::abs(a) == 0.0) continue;  // pass through a pole, phase picked up next sample
        acc += std::arg(a / prev);
        prev = a;
    }
    return -2.0 * acc;
}

GeneratorParams params_from_chi(cplx chi, const WNState& wn, int sigma) {
    GeneratorParams p;
    p.chi = chi;
    const cplx sn = std::sin(chi);
    p.theta0 = 2.0 * chi * wn.a.imag() / sn;
    p.theta_plus = kI * chi * wn.b / sn;
    p.theta_minus = -kI * chi * std::conj(wn.b) / sn;
    p.branch_index = static_cast<int>(std::lround(chi.real() / kPi));
    p.hermitian = std::abs(p.theta0.imag()) < 1e-9 &&
                  std::abs(p.theta_minus - std::conj(p.theta_plus)) <
                      1e-9 * std::max(1.0, std::abs(p.theta_plus));
    (void)sigma;
    return p;
}

}  // namespace

GeneratorParams make_generator(double theta0, cplx theta_plus, int sigma) {
    if (sigma != 1 && sigma != -1) throw std::invalid_argument("make_generator: sigma must be +1 or -1");
    GeneratorParams p;
    p.theta0 = theta0;
    p.theta_plus = theta_plus;
    p.theta_minus = std::conj(theta_plus);
    p.chi = std::sqrt(cplx(sigma * std::norm(theta_plus) + theta0 * theta0 / 4.0, 0.0));
    p.branch_index = static_cast<int>(std::lround(p.chi.real() / kPi));
    p.hermitian = true;
    return p;
}

WNState disentangle(const GeneratorParams& params, int sigma) {
    (void)sigma;
    const auto [a, b] = ab_at_s(params, 1.0);
    WNState s = wn_from_ab(0.0, a, b, im_eta_disentangled(params));
    if (std::abs(a) != 0.0) {
        // w from its own Theta- coefficient (equals -conj(b)/a on unitary data)
        s.w = -kI * params.theta_minus * sinc_c(params.chi) / a;
    }
    return s;
}

GeneratorParams invert(const WNState& wn, int sigma, const std::optional<GeneratorParams>& prev,
                       double* defect_out) {
    if (sigma != 1 && sigma != -1) throw std::invalid_argument("invert: sigma must be +1 or -1");
    const double shell = std::norm(wn.a) + sigma * std::norm(wn.b);
    const double defect = std::abs(shell - 1.0);
    if (defect_out) *defect_out = defect;
    if (!(shell > 0.0) || defect > 1e-8) {
        throw std::domain_error("invert: unitarity identity |a|^2 + sigma |b|^2 = 1 violated beyond 1e-8");
    }
    const double scale = 1.0 / std::sqrt(shell);
    WNState w = wn;
    w.a *= scale;
    w.b *= scale;
    const double target_im = wn.eta.imag();

    // near-identity / pure Cartan winding: b ~ 0, a ~ e^{i chi} on the unit
    // circle; eta = -i Theta0 fixes Theta0 directly
    if (std::abs(w.b) < 1e-9 && std::abs(w.a.imag()) < 1e-9 && w.a.real() > 0.0) {
        GeneratorParams p;
        const cplx chi = cplx(-target_im / 2.0, 0.0);
        p.chi = chi;
        p.theta0 = -target_im;
        const cplx sc = sinc_c(chi);
        p.theta_plus = std::abs(sc) > 1e-9 ? kI * w.b / sc : cplx(0.0, 0.0);
        p.theta_minus = std::conj(p.theta_plus);
        p.branch_index = static_cast<int>(std::lround(chi.real() / kPi));
        return p;
    }
    // defining-rep -1: any odd pulse is a valid logarithm; pick the principal
    if (std::abs(w.b) < 1e-15 && std::abs(w.a.imag()) < 1e-15 && w.a.real() < 0.0) {
        GeneratorParams p;
        p.chi = kPi;
        p.theta_plus = kPi;
        p.theta_minus = kPi;
        p.branch_index = 1;
        return p;
    }

    // candidates chi = +-acos(Re a) + 2 pi k, all reproducing (a, b); the
    // branch is fixed by matching Im eta of the s-family against wn.eta
    const double re_a = w.a.real();
    cplx acos_base;
    if (re_a > 1.0) {
        acos_base = cplx(0.0, std::acosh(re_a));
    } else if (re_a < -1.0) {
        acos_base = cplx(kPi, std::acosh(-re_a));
    } else {
        acos_base = cplx(std::acos(std::clamp(re_a, -1.0, 1.0)), 0.0);
    }

    const cplx chi_seed = prev ? prev->chi : cplx(0.0, 0.0);
    const int k_span = static_cast<int>(std::abs(target_im) / (4.0 * kPi)) +
                       static_cast<int>(std::abs(chi_seed.real()) / (2.0 * kPi)) + 2;

    GeneratorParams best;
    double best_score = std::numeric_limits<double>::infinity();
    for (int sign = 1; sign >= -1; sign -= 2) {
        for (int k = -k_span; k <= k_span; ++k) {
            const cplx chi = static_cast<double>(sign) * acos_base + 2.0 * kPi * k;
            if (std::abs(std::sin(chi)) < 1e-12) continue;
            const GeneratorParams cand = params_from_chi(chi, w, sigma);
            const double d_eta = std::abs(im_eta_disentangled(cand) - target_im);
            // eta branches differ by multiples of 4 pi; tie-break on chi_prev
            const double score = d_eta + 1e-6 * std::abs(chi - chi_seed);
            if (score < best_score) {
                best_score = score;
                best = cand;
            }
        }
    }
    if (!std::isfinite(best_score)) {
        throw std::runtime_error("invert: no admissible arctangent branch found");
    }
    return best;
}

std::vector<GeneratorParams> invert_series(const std::vector<WNState>& trajectory, int sigma) {
    std::vector<GeneratorParams> out;
    out.reserve(trajectory.size());
    std::optional<GeneratorParams> prev;
    for (const auto& wn : trajectory) {
        out.push_back(invert(wn, sigma, prev));
        prev = out.back();
    }
    return out;
}

FictitiousChain build_chain(const SectorSignature& sector, const GeneratorParams& params) {
    if (sector.sigma == 0) throw std::invalid_argument("build_chain: use build_hw_chain for sigma = 0");
    FictitiousChain chain;
    const int dim = sector.dim;
    chain.diag.resize(dim);
    chain.sub.resize(std::max(dim - 1, 0));
    chain.super.resize(std::max(dim - 1, 0));
    const cplx theta0 = params.hermitian ? cplx(params.theta0.real(), 0.0) : params.theta0;
    for (int n = 0; n < dim; ++n) chain.diag[n] = theta0 * (sector.lowest_weight + n);
    for (int n = 0; n + 1 < dim; ++n) {
        const double b = lanczos_b(sector, n + 1);
        chain.sub[n] = params.theta_plus * b;
        chain.super[n] = params.hermitian ? std::conj(params.theta_plus) * b : params.theta_minus * b;
    }
    return chain;
}

FictitiousChain build_hw_chain(const HWDisplacement& disp, int dim) {
    FictitiousChain chain;
    chain.diag = Eigen::VectorXcd::Constant(dim, cplx(-disp.phi, 0.0));
    chain.sub.resize(std::max(dim - 1, 0));
    chain.super.resize(std::max(dim - 1, 0));
    for (int n = 0; n + 1 < dim; ++n) {
        const double b = std::sqrt(static_cast<double>(n + 1));
        chain.sub[n] = disp.alpha * b;
        chain.super[n] = std::conj(disp.alpha) * b;
    }
    return chain;
}

std::vector<FictitiousChain> chain_evolve(const FictitiousChain& chain, const std::vector<double>& s_grid) {
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        if (s_grid[i] < 0.0 || s_grid[i] > 1.0 || (i > 0 && s_grid[i] <= s_grid[i - 1])) {
            throw std::invalid_argument("chain_evolve: s_grid must be ascending within [0, 1]");
        }
    }
    const Eigen::Index dim = chain.diag.size();
    std::vector<FictitiousChain> out;
    out.reserve(s_grid.size());

    const bool trivial = dim == 1 || chain.sub.size() == 0 ||
                         chain.sub.cwiseAbs().maxCoeff() == 0.0;
    if (trivial) {
        for (double s : s_grid) {
            FictitiousChain sample = chain;
            sample.s = s;
            sample.psi = Eigen::VectorXcd::Zero(dim);
            sample.psi[0] = std::exp(-kI * s * chain.diag[0]);
            out.push_back(std::move(sample));
        }
        return out;
    }

    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
    bool hermitian = true;
    for (Eigen::Index n = 0; n < dim; ++n) {
        g(n, n) = chain.diag[n];
        if (std::abs(chain.diag[n].imag()) > 1e-12) hermitian = false;
    }
    for (Eigen::Index n = 0; n + 1 < dim; ++n) {
        g(n + 1, n) = chain.sub[n];
        g(n, n + 1) = chain.super[n];
        if (std::abs(chain.super[n] - std::conj(chain.sub[n])) >
            1e-12 * std::max(1.0, std::abs(chain.sub[n]))) {
            hermitian = false;
        }
    }

    if (hermitian) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g);
        if (eig.info() != Eigen::Success) throw std::runtime_error("chain_evolve: eigendecomposition failed");
        const Eigen::VectorXcd v0 = eig.eigenvectors().adjoint().col(0);  // V^dag e_0
        for (double s : s_grid) {
            FictitiousChain sample = chain;
            sample.s = s;
            Eigen::VectorXcd phase(dim);
            for (Eigen::Index m = 0; m < dim; ++m) {
                phase[m] = std::exp(-kI * (s * eig.eigenvalues()[m])) * v0[m];
            }
            sample.psi = eig.eigenvectors() * phase;
            out.push_back(std::move(sample));
        }
        return out;
    }

    for (double s : s_grid) {
        FictitiousChain sample = chain;
        sample.s = s;
        const Eigen::MatrixXcd u = (-kI * s * g).exp();
        sample.psi = u.col(0);
        out.push_back(std::move(sample));
    }
    return out;
}

std::vector<FictitiousChain> chain_evolve(const SectorSignature& sector, const GeneratorParams& params,
                                          const std::vector<double>& s_grid, double tol) {
    (void)tol;
    return chain_evolve(build_chain(sector, params), s_grid);
}

FictitiousChain rephase_gauge(const FictitiousChain& chain) {
    FictitiousChain out = chain;
    if (chain.sub.size() == 0) return out;
    const double phase = std::arg(chain.sub[0]);
    for (Eigen::Index n = 0; n < chain.sub.size(); ++n) {
        out.sub[n] = chain.sub[n] * std::exp(-kI * phase);
        out.super[n] = chain.super[n] * std::exp(kI * phase);
    }
    if (chain.psi.size() > 0) {
        for (Eigen::Index n = 0; n < chain.psi.size(); ++n) {
            out.psi[n] = chain.psi[n] * std::exp(-kI * (phase * static_cast<double>(n)));
        }
    }
    return out;
}

int chain_support_dim(const SectorSignature& sector, const GeneratorParams& params, int min_dim) {
    if (sector.sigma == 1) return sector.dim;  // exact finite representation
    if (sector.sigma == 0) return min_dim;     // caller sizes by the Poisson tail
    double ln_z_max = -std::numeric_limits<double>::infinity();
    constexpr int kSamples = 512;
    for (int i = 1; i <= kSamples; ++i) {
        const auto [a, b] = ab_at_s(params, static_cast<double>(i) / kSamples);
        const double mag_a = std::abs(a);
        if (mag_a == 0.0) return 0;
        ln_z_max = std::max(ln_z_max, std::log(std::abs(b) / mag_a));
    }
    if (ln_z_max >= -1e-3) return 0;  // support does not decay: no truncation converges
    const int needed = static_cast<int>(std::ceil(28.0 / -ln_z_max)) + 8;
    return std::max(min_dim, needed);
}

}  // namespace klie
