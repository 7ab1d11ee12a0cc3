// qsl.cpp — rate identity, dispersions, Schrodinger-Robertson gap

#include "krylov_lie/qsl.hpp"

#include <cmath>
#include <stdexcept>

namespace klie {

namespace {

SaturationFlag classify(double gap, double bound, double abs_z, double residual_scale, double residual,
                        int sigma, double tol) {
    const bool gap_small = std::abs(gap) <= tol * bound * bound + 1e-30;
    if (gap_small) {
        if (sigma == 1 && std::abs(abs_z - 1.0) < tol &&
            std::abs(residual) > tol * residual_scale) {
            return SaturationFlag::accidental_compact;
        }
        return SaturationFlag::saturated;
    }
    return SaturationFlag::unsaturated;
}

}  // namespace

cplx ladder_expectation(const SectorSignature& sector, const WNState& wn) {
    // -2 sigma lambda z*/(1 + sigma |z|^2) = -2 sigma lambda a b* on the shell
    const double shell = std::norm(wn.a) + sector.sigma * std::norm(wn.b);
    return -2.0 * sector.sigma * sector.lowest_weight * wn.a * std::conj(wn.b) / shell;
}

cplx ladder_expectation_series(const KrylovWavefunction& kry) {
    cplx acc = 0.0;
    for (int n = 0; n + 1 < kry.sector.dim; ++n) {
        acc += std::conj(kry.amplitudes[n + 1]) * kry.amplitudes[n] * lanczos_b(kry.sector, n + 1);
    }
    return acc;
}

QslReport qsl_point(const SectorSignature& sector, cplx gamma_t, const WNState& wn,
                    const KrylovWavefunction& kry) {
    if (sector.sigma != 1 && sector.sigma != -1) {
        throw std::invalid_argument("qsl_point: Wei-Norman overload requires sigma = +1 or -1");
    }
    const double sigma = sector.sigma;
    const double lambda = sector.lowest_weight;
    const double a2 = std::norm(wn.a);
    const double b2 = std::norm(wn.b);
    const double shell = a2 + sigma * b2;

    QslReport rep;
    rep.t = wn.t;
    rep.abs_z = a2 > 0.0 ? std::sqrt(b2 / a2) : std::numeric_limits<double>::infinity();

    // pole-safe building blocks: Re[gamma z*]/(1+sigma|z|^2) = Re[gamma a b*]
    const double re_gab = std::real(gamma_t * wn.a * std::conj(wn.b)) / shell;
    const cplx ladder = ladder_expectation(sector, wn);

    rep.dK_dt = 2.0 * std::imag(gamma_t * ladder);
    rep.delta_k = kry.complexity_std;
    const double dh2 = -2.0 * sigma * lambda * std::norm(gamma_t) + 8.0 * lambda * re_gab * re_gab;
    rep.delta_h = std::sqrt(std::max(dh2, 0.0));
    rep.bound = 2.0 * rep.delta_h * rep.delta_k;
    rep.gap = rep.bound * rep.bound - rep.dK_dt * rep.dK_dt;
    rep.covariance = 4.0 * lambda * (b2 - sigma * a2) * re_gab / shell;
    rep.phase_lock_residual = a2 > 0.0 ? std::real(gamma_t * std::conj(wn.z)) : 0.0;

    const double residual_scale = std::abs(gamma_t) * std::max(rep.abs_z, 1e-300);
    rep.flag = classify(rep.gap, rep.bound, rep.abs_z, residual_scale, rep.phase_lock_residual,
                        sector.sigma, kSaturationTol);
    return rep;
}

QslReport qsl_point(const SectorSignature& sector, cplx gamma_t, const HWDisplacement& disp,
                    const KrylovWavefunction& kry) {
    if (sector.sigma != 0) {
        throw std::invalid_argument("qsl_point: displacement overload requires sigma = 0");
    }
    QslReport rep;
    rep.t = disp.t;
    rep.abs_z = std::abs(disp.alpha);
    rep.delta_h = std::abs(gamma_t);
    rep.delta_k = kry.complexity_std;
    rep.dK_dt = 2.0 * std::real(gamma_t * std::conj(disp.alpha));
    rep.bound = 2.0 * rep.delta_h * rep.delta_k;
    rep.gap = rep.bound * rep.bound - rep.dK_dt * rep.dK_dt;
    rep.covariance = 2.0 * std::imag(gamma_t * std::conj(disp.alpha));
    rep.phase_lock_residual = std::imag(gamma_t * std::conj(disp.alpha));
    const double residual_scale = std::abs(gamma_t) * std::max(rep.abs_z, 1e-300);
    rep.flag = classify(rep.gap, rep.bound, rep.abs_z, residual_scale, rep.phase_lock_residual, 0,
                        kSaturationTol);
    return rep;
}

TiBenchmarkRow ti_benchmark(TiAlgebra algebra, double alpha, double weight, double t) {
    TiBenchmarkRow row;
    switch (algebra) {
        case TiAlgebra::hw: {
            row.K = alpha * alpha * t * t;
            row.delta_k = std::abs(alpha * t);
            row.b1 = std::abs(alpha);
            row.lhs = std::abs(2.0 * alpha * alpha * t);
            break;
        }
        case TiAlgebra::su2: {
            const double j = weight;
            if (!(j > 0.0)) throw std::invalid_argument("ti_benchmark: j must be > 0");
            row.K = 2.0 * j * std::pow(std::sin(alpha * t), 2);
            row.delta_k = std::sqrt(j / 2.0) * std::abs(std::sin(2.0 * alpha * t));
            row.b1 = std::abs(alpha) * std::sqrt(2.0 * j);
            row.lhs = std::abs(2.0 * j * alpha * std::sin(2.0 * alpha * t));
            break;
        }
        case TiAlgebra::su11: {
            const double kappa = weight;
            if (!(kappa > 0.0)) throw std::invalid_argument("ti_benchmark: kappa must be > 0");
            row.K = 2.0 * kappa * std::pow(std::sinh(alpha * t), 2);
            row.delta_k = std::sqrt(kappa / 2.0) * std::abs(std::sinh(2.0 * alpha * t));
            row.b1 = std::abs(alpha) * std::sqrt(2.0 * kappa);
            row.lhs = std::abs(2.0 * kappa * alpha * std::sinh(2.0 * alpha * t));
            break;
        }
    }
    row.rhs = 2.0 * row.b1 * row.delta_k;
    return row;
}

SaturationScan saturation_scan(const std::vector<QslReport>& reports, int sigma, double tol) {
    for (std::size_t i = 1; i < reports.size(); ++i) {
        if (!(reports[i].t > reports[i - 1].t)) {
            throw std::invalid_argument("saturation_scan: reports must be on an ascending grid");
        }
    }
    SaturationScan scan;
    scan.labels.reserve(reports.size());
    for (const auto& rep : reports) {
        const double residual_scale = std::max({rep.delta_h * rep.abs_z, std::abs(rep.phase_lock_residual), 1e-300});
        const SaturationFlag flag = classify(rep.gap, rep.bound, rep.abs_z, residual_scale,
                                             rep.phase_lock_residual, sigma, tol);
        scan.labels.push_back(flag);
        if (flag == SaturationFlag::saturated) ++scan.saturated_points;
        if (flag == SaturationFlag::accidental_compact) ++scan.accidental_points;
    }
    if (sigma == 1) {
        for (std::size_t i = 1; i < reports.size(); ++i) {
            const double prev = reports[i - 1].abs_z - 1.0;
            const double curr = reports[i].abs_z - 1.0;
            if (prev == 0.0) continue;
            if ((prev < 0.0 && curr >= 0.0) || (prev > 0.0 && curr <= 0.0)) ++scan.accidental_crossings;
        }
    }
    scan.persistent = scan.saturated_points == static_cast<int>(reports.size());
    if (scan.persistent) {
        scan.classification = "persistently_saturated";
    } else if (scan.accidental_points + scan.accidental_crossings > 0) {
        scan.classification = "unsaturated_with_accidental_points";
    } else {
        scan.classification = "unsaturated";
    }
    return scan;
}

}  // namespace klie
