// qsl.hpp — dispersion bound on the complexity growth rate and its saturation.

#pragma once

#include <string>
#include <vector>

#include "krylov_lie/algebra.hpp"
#include "krylov_lie/krylov.hpp"
#include "krylov_lie/weinorman.hpp"

namespace klie {

enum class SaturationFlag { saturated, accidental_compact, unsaturated };

struct QslReport {
    double t = 0.0;
    double dK_dt = 0.0;               // 2 Im[gamma C]
    double delta_h = 0.0;
    double delta_k = 0.0;
    double bound = 0.0;               // 2 dH dK
    double gap = 0.0;                 // bound^2 - dK_dt^2
    double covariance = 0.0;          // <{H - <H>, K - <K>}>; gap = covariance^2
    double phase_lock_residual = 0.0; // Re[gamma z*] (sigma = +-1), Im[gamma alpha*] (sigma = 0)
    double abs_z = 0.0;               // |z| (sigma = +-1) or |alpha| (sigma = 0)
    SaturationFlag flag = SaturationFlag::saturated;
};

inline constexpr double kSaturationTol = 1e-6;

QslReport qsl_point(const SectorSignature& sector, cplx gamma_t, const WNState& wn,
                    const KrylovWavefunction& kry);
QslReport qsl_point(const SectorSignature& sector, cplx gamma_t, const HWDisplacement& disp,
                    const KrylovWavefunction& kry);

/// <L_+> on the coherent state: closed form verified against the amplitude
/// series sum_n conj(phi_{n+1}) phi_n b_{n+1}.
cplx ladder_expectation(const SectorSignature& sector, const WNState& wn);
cplx ladder_expectation_series(const KrylovWavefunction& kry);

enum class TiAlgebra { hw, su2, su11 };

struct TiBenchmarkRow {
    double K = 0.0;
    double delta_k = 0.0;
    double b1 = 0.0;
    double lhs = 0.0;  // |dK/dt|
    double rhs = 0.0;  // 2 b1 dK
};

/// Time-independent coherent benchmark: K, dK, b1 and the identically
/// saturated bound |dK/dt| = 2 b1 dK for constant drive amplitude.
/// `weight` is ignored for hw, equals j for su2 and kappa for su11.
TiBenchmarkRow ti_benchmark(TiAlgebra algebra, double alpha, double weight, double t);

struct SaturationScan {
    std::vector<SaturationFlag> labels;
    bool persistent = false;
    int saturated_points = 0;
    int accidental_points = 0;
    int accidental_crossings = 0;  // sign changes of |z| - 1 (sigma = +1)
    std::string classification;    // "persistently_saturated" | "unsaturated_with_accidental_points" | "unsaturated"
};

SaturationScan saturation_scan(const std::vector<QslReport>& reports, int sigma,
                               double tol = kSaturationTol);

}  // namespace klie
