// krylov.cpp — wavefunction assembly in log space, multi-sector products

#include "krylov_lie/krylov.hpp"

#include <cmath>
#include <stdexcept>

namespace klie {

namespace {

constexpr cplx kI{0.0, 1.0};

// log normalization constants: c_n = sqrt(binom(2j,n)) or
// sqrt(Gamma(2k+n)/(n! Gamma(2k)))
double log_cn(const SectorSignature& sector, int n) {
    if (sector.sigma == 1) {
        const double two_j = -2.0 * sector.lowest_weight;
        return 0.5 * (std::lgamma(two_j + 1.0) - std::lgamma(n + 1.0) - std::lgamma(two_j - n + 1.0));
    }
    const double two_k = 2.0 * sector.lowest_weight;
    return 0.5 * (std::lgamma(two_k + n) - std::lgamma(n + 1.0) - std::lgamma(two_k));
}

cplx ipow(cplx base, int n) {
    cplx acc = 1.0;
    for (int i = 0; i < n; ++i) acc *= base;
    return acc;
}

void finalize_moments(KrylovWavefunction& kry, double closed_k, double closed_var) {
    kry.probabilities = kry.amplitudes.cwiseAbs2();
    kry.complexity = closed_k;
    kry.complexity_std = std::sqrt(std::max(closed_var, 0.0));
}

}  // namespace

KrylovWavefunction wavefunction_from_wn(const SectorSignature& sector, const WNState& wn, double tail_tol) {
    if (sector.sigma != 1 && sector.sigma != -1) {
        throw std::invalid_argument("wavefunction_from_wn: sector must have sigma = +1 or -1");
    }
    KrylovWavefunction kry;
    kry.sector = sector;
    kry.t = wn.t;
    kry.amplitudes.resize(sector.dim);

    const double lambda = sector.lowest_weight;
    const double sigma = sector.sigma;
    const double b2 = std::norm(wn.b);
    const double a2 = std::norm(wn.a);

    if (sector.sigma == 1) {
        // phi_n = c_n a^{2j-n} b^n; exact through z-poles (a -> 0)
        const int two_j = sector.dim - 1;
        for (int n = 0; n < sector.dim; ++n) {
            kry.amplitudes[n] = std::exp(log_cn(sector, n)) * ipow(wn.a, two_j - n) * ipow(wn.b, n);
        }
    } else {
        if (!(std::abs(wn.z) < 1.0)) {
            throw std::domain_error("wavefunction_from_wn: su(1,1) state requires |z| < 1");
        }
        // phi_n = e^{kappa eta} z^n c_n with the trajectory's eta branch
        const double ln_mag_z = b2 > 0.0 ? 0.5 * std::log(b2 / a2) : 0.0;
        const double arg_z = std::arg(wn.z);
        const cplx k_eta = lambda * wn.eta;
        for (int n = 0; n < sector.dim; ++n) {
            if (n > 0 && b2 == 0.0) {
                kry.amplitudes[n] = 0.0;
                continue;
            }
            const double mag = std::exp(k_eta.real() + n * ln_mag_z + log_cn(sector, n));
            const double ph = k_eta.imag() + n * arg_z;
            kry.amplitudes[n] = mag * std::exp(kI * ph);
        }
    }

    // pole-safe closed forms: sigma|z|^2/(1+sigma|z|^2) = sigma|b|^2 and
    // |z|^2/(1+sigma|z|^2)^2 = |a|^2 |b|^2 on the unit shell |a|^2+sigma|b|^2=1
    const double shell = a2 + sigma * b2;
    finalize_moments(kry, -2.0 * sigma * lambda * b2 / shell,
                     -2.0 * sigma * lambda * a2 * b2 / (shell * shell));

    if (sector.sigma == -1 && kry.probabilities[sector.dim - 1] > tail_tol) {
        throw std::runtime_error("wavefunction_from_wn: truncation tail P_{dim-1} exceeds tolerance");
    }
    return kry;
}

KrylovWavefunction hw_wavefunction(const HWDisplacement& disp, int dim, double tail_tol) {
    if (dim < 1) throw std::invalid_argument("hw_wavefunction: dim must be >= 1");
    KrylovWavefunction kry;
    kry.sector = make_sector(0, 0.0, dim);
    kry.t = disp.t;
    kry.amplitudes.resize(dim);

    const double mean = std::norm(disp.alpha);
    const double ln_mag_a = mean > 0.0 ? std::log(std::abs(disp.alpha)) : 0.0;
    const double arg_ia = std::arg(-kI * disp.alpha);
    for (int n = 0; n < dim; ++n) {
        if (n > 0 && mean == 0.0) {
            kry.amplitudes[n] = 0.0;
            continue;
        }
        const double mag = std::exp(-0.5 * mean + n * ln_mag_a - 0.5 * std::lgamma(n + 1.0));
        kry.amplitudes[n] = mag * std::exp(kI * (disp.phi + n * arg_ia));
    }
    finalize_moments(kry, mean, mean);
    if (kry.probabilities[dim - 1] > tail_tol) {
        throw std::runtime_error("hw_wavefunction: truncation tail P_{dim-1} exceeds tolerance");
    }
    return kry;
}

std::vector<KrylovWavefunction> complexity_series(const SectorSignature& sector, const DriveEnvelope& drive,
                                                  const std::vector<int>& cartan_row,
                                                  const std::vector<double>& grid, double tol) {
    std::vector<KrylovWavefunction> series;
    series.reserve(grid.size());
    if (sector.sigma == 0) {
        const auto disp = hw_displacement(coupling_function(drive, cartan_row), grid, tol,
                                          envelope_breakpoints(drive));
        for (const auto& d : disp) series.push_back(hw_wavefunction(d, sector.dim));
    } else {
        const auto wn = integrate_wn(sector, drive, cartan_row, grid, tol);
        for (const auto& s : wn) series.push_back(wavefunction_from_wn(sector, s));
    }
    return series;
}

cplx MultiSectorWavefunction::joint_amplitude(const std::vector<int>& indices) const {
    if (indices.size() != per_sector.size()) {
        throw std::invalid_argument("joint_amplitude: one index per sector required");
    }
    cplx prod = 1.0;
    for (std::size_t k = 0; k < indices.size(); ++k) prod *= per_sector[k].amplitudes[indices[k]];
    return prod;
}

double MultiSectorWavefunction::joint_probability(const std::vector<int>& indices) const {
    if (indices.size() != per_sector.size()) {
        throw std::invalid_argument("joint_probability: one index per sector required");
    }
    double prod = 1.0;
    for (std::size_t k = 0; k < indices.size(); ++k) prod *= per_sector[k].probabilities[indices[k]];
    return prod;
}

Eigen::VectorXd MultiSectorWavefunction::materialize_joint(std::vector<int>& shape_out) const {
    if (per_sector.size() > 3) {
        throw std::length_error("materialize_joint: dense joint distributions are capped at 3 sectors");
    }
    shape_out.clear();
    Eigen::Index total = 1;
    for (const auto& s : per_sector) {
        shape_out.push_back(s.sector.dim);
        total *= s.sector.dim;
    }
    Eigen::VectorXd joint = Eigen::VectorXd::Ones(total);
    Eigen::Index stride = 1;
    for (std::size_t k = per_sector.size(); k-- > 0;) {
        const auto& p = per_sector[k].probabilities;
        for (Eigen::Index idx = 0; idx < total; ++idx) {
            joint[idx] *= p[(idx / stride) % p.size()];
        }
        stride *= p.size();
    }
    return joint;
}

std::vector<MultiSectorWavefunction> multi_sector(const std::vector<SectorSignature>& sectors,
                                                  const std::vector<DriveEnvelope>& drives,
                                                  const std::vector<std::vector<int>>& cartan_rows,
                                                  const RootData& roots, const std::vector<double>& grid,
                                                  double tol) {
    if (sectors.size() != drives.size() || sectors.size() != cartan_rows.size() || sectors.empty()) {
        throw std::invalid_argument("multi_sector: sectors, drives and cartan_rows must align");
    }
    const CommutingCheck check = validate_commuting_sectors(roots);
    if (!check.ok) {
        throw std::invalid_argument("multi_sector: sectors do not commute; " + check.message);
    }

    std::vector<std::vector<KrylovWavefunction>> per(sectors.size());
    for (std::size_t k = 0; k < sectors.size(); ++k) {
        try {
            per[k] = complexity_series(sectors[k], drives[k], cartan_rows[k], grid, tol);
        } catch (const std::exception& err) {
            throw std::runtime_error("multi_sector: sector " + std::to_string(k + 1) + ": " + err.what());
        }
    }

    std::vector<MultiSectorWavefunction> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i].t = grid[i];
        out[i].per_sector.reserve(sectors.size());
        double k_total = 0.0;
        for (std::size_t k = 0; k < sectors.size(); ++k) {
            k_total += per[k][i].complexity;
            out[i].per_sector.push_back(std::move(per[k][i]));
        }
        out[i].k_total = k_total;
    }
    return out;
}

}  // namespace klie
