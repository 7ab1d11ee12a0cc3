// krylov.hpp — Krylov wavefunctions, occupation probabilities, complexity.

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "krylov_lie/algebra.hpp"
#include "krylov_lie/drive.hpp"
#include "krylov_lie/weinorman.hpp"

namespace klie {

/// Maximum allowed occupation of the last retained chain site for truncated
/// (sigma = -1 / 0) sectors.
inline constexpr double kTruncationTailTol = 1e-10;

struct KrylovWavefunction {
    SectorSignature sector;
    double t = 0.0;
    Eigen::VectorXcd amplitudes;    // phi_0 .. phi_{dim-1}
    Eigen::VectorXd probabilities;  // |phi_n|^2
    double complexity = 0.0;        // K = sum n P_n (closed form)
    double complexity_std = 0.0;    // sqrt(sum n^2 P_n - K^2) (closed form)
};

/// Coherent-state wavefunction of a sigma = +-1 sector from Wei-Norman data.
/// Amplitudes are assembled from the regular pair (a, b), so sigma = +1 poles
/// of z are harmless: phi_n = c_n a^{2j-n} b^n. For sigma = -1 the
/// branch-continuous eta fixes the overall phase and the truncation tail
/// P_{dim-1} must stay below `tail_tol` (throws otherwise; pass +inf to skip).
KrylovWavefunction wavefunction_from_wn(const SectorSignature& sector, const WNState& wn,
                                        double tail_tol = kTruncationTailTol);

/// Poisson wavefunction of the Heisenberg-Weyl sector:
/// phi_n = e^{i phi - |alpha|^2/2} (-i alpha)^n / sqrt(n!).
KrylovWavefunction hw_wavefunction(const HWDisplacement& disp, int dim,
                                   double tail_tol = kTruncationTailTol);

/// Full pipeline for one sector: drive -> Wei-Norman / displacement ->
/// wavefunction per grid point, enforcing the tail criterion on the grid.
std::vector<KrylovWavefunction> complexity_series(const SectorSignature& sector, const DriveEnvelope& drive,
                                                  const std::vector<int>& cartan_row,
                                                  const std::vector<double>& grid, double tol = 1e-10);

struct MultiSectorWavefunction {
    double t = 0.0;
    std::vector<KrylovWavefunction> per_sector;
    double k_total = 0.0;

    cplx joint_amplitude(const std::vector<int>& indices) const;
    double joint_probability(const std::vector<int>& indices) const;
    /// Dense joint probabilities, capped at 3 sectors (throws beyond).
    Eigen::VectorXd materialize_joint(std::vector<int>& shape_out) const;
};

/// Independent commuting sectors evolved under their own drives; requires the
/// commuting-sector validation to pass. Sector-indexed errors are rethrown
/// with the sector tag.
std::vector<MultiSectorWavefunction> multi_sector(const std::vector<SectorSignature>& sectors,
                                                  const std::vector<DriveEnvelope>& drives,
                                                  const std::vector<std::vector<int>>& cartan_rows,
                                                  const RootData& roots, const std::vector<double>& grid,
                                                  double tol = 1e-10);

}  // namespace klie
