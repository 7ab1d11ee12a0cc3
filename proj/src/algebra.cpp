// algebra.cpp — sector validation, Lanczos coefficients, root-data checks

#include "krylov_lie/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace klie {

SectorSignature make_sector(int sigma, double lowest_weight, int dim) {
    if (sigma != 1 && sigma != -1 && sigma != 0) {
        throw std::invalid_argument("make_sector: sigma must be +1, -1 or 0");
    }
    if (!std::isfinite(lowest_weight)) {
        throw std::invalid_argument("make_sector: lowest_weight must be finite");
    }
    SectorSignature s;
    s.sigma = sigma;
    if (sigma == 1) {
        const double j = -lowest_weight;
        if (j < 0.0) {
            throw std::invalid_argument("make_sector: su(2) lowest weight must be -j <= 0");
        }
        const double two_j = 2.0 * j;
        const double snapped = std::round(two_j);
        if (std::abs(two_j - snapped) > 1e-9) {
            throw std::invalid_argument("make_sector: su(2) weight is not a half-integer (2j off by > 1e-9)");
        }
        s.lowest_weight = -snapped / 2.0;
        const int forced_dim = static_cast<int>(snapped) + 1;
        if (dim != 0 && dim != forced_dim) {
            throw std::invalid_argument("make_sector: su(2) dim must equal 2j+1");
        }
        s.dim = forced_dim;
    } else if (sigma == -1) {
        if (!(lowest_weight > 0.0)) {
            throw std::invalid_argument("make_sector: su(1,1) lowest weight kappa must be > 0");
        }
        s.lowest_weight = lowest_weight;
        s.dim = dim == 0 ? kDefaultTruncationDim : dim;
    } else {
        s.lowest_weight = 0.0;
        s.dim = dim == 0 ? kDefaultTruncationDim : dim;
    }
    if (s.dim < 1) {
        throw std::invalid_argument("make_sector: dim must be >= 1");
    }
    return s;
}

double lanczos_b(const SectorSignature& sector, int n) {
    if (n < 0) throw std::invalid_argument("lanczos_b: n must be >= 0");
    if (n == 0) return 0.0;
    if (sector.sigma == 0) return std::sqrt(static_cast<double>(n));
    const double radicand =
        -static_cast<double>(sector.sigma) * n * (2.0 * sector.lowest_weight + n - 1.0);
    if (radicand < -1e-12) {
        throw std::domain_error("lanczos_b: negative radicand (inconsistent sigma/lowest_weight pair)");
    }
    return std::sqrt(std::max(radicand, 0.0));
}

Eigen::VectorXd lanczos_coefficients(const SectorSignature& sector, int n_max) {
    if (n_max < 0) throw std::invalid_argument("lanczos_coefficients: n_max must be >= 0");
    if (sector.sigma == 1 && n_max > sector.dim) {
        // the chain terminates with b_{2j+1} = 0, which may still be requested
        throw std::invalid_argument("lanczos_coefficients: n_max exceeds the compact chain length");
    }
    Eigen::VectorXd b(n_max);
    for (int n = 1; n <= n_max; ++n) b[n - 1] = lanczos_b(sector, n);
    return b;
}

SectorSignature virasoro_weight(double h, double c, int k, int truncation_dim) {
    if (k < 1) throw std::invalid_argument("virasoro_weight: k must be a positive integer");
    if (h < 0.0) throw std::invalid_argument("virasoro_weight: h must be >= 0");
    const double lambda_k = h / k + c * (static_cast<double>(k) * k - 1.0) / (24.0 * k);
    if (!(lambda_k > 0.0)) {
        throw std::domain_error("virasoro_weight: lambda_k <= 0 (non-unitary sector)");
    }
    return make_sector(-1, lambda_k, truncation_dim);
}

CommutingCheck validate_commuting_sectors(const RootData& roots) {
    const Eigen::MatrixXi& a = roots.cartan_matrix;
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw std::invalid_argument("validate_commuting_sectors: Cartan matrix must be square and non-empty");
    }
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        if (a(i, i) != 2) throw std::invalid_argument("validate_commuting_sectors: Cartan diagonal entries must be 2");
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (i != j && a(i, j) > 0) {
                throw std::invalid_argument("validate_commuting_sectors: off-diagonal Cartan entries must be <= 0");
            }
        }
    }
    const int rank = static_cast<int>(a.rows());
    for (int r : roots.selected_roots) {
        if (r < 1 || r > rank) {
            throw std::invalid_argument("validate_commuting_sectors: selected root index out of range");
        }
    }
    CommutingCheck check;
    for (std::size_t i = 0; i < roots.selected_roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.selected_roots.size(); ++j) {
            const int ri = roots.selected_roots[i];
            const int rj = roots.selected_roots[j];
            if (ri == rj) {
                check.ok = false;
                check.offending_pairs.emplace_back(ri, rj);
                continue;
            }
            if (a(ri - 1, rj - 1) != 0 || a(rj - 1, ri - 1) != 0) {
                check.ok = false;
                check.offending_pairs.emplace_back(ri, rj);
            }
        }
    }
    if (!check.ok) {
        check.message = "non-commuting simple-root pairs:";
        for (auto& [p, q] : check.offending_pairs) {
            check.message += " (" + std::to_string(p) + "," + std::to_string(q) + ")";
        }
    }
    return check;
}

}  // namespace klie
