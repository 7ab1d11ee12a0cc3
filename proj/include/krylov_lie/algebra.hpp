// algebra.hpp — Rank-one sectors, ladder coefficients, Cartan-matrix root data,
// and the Virasoro weight mapping.

#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace klie {

/// A rank-one ladder sector. sigma = +1 is compact su(2) (lowest weight -j,
/// finite chain of dim = 2j+1), sigma = -1 is non-compact su(1,1) (lowest
/// weight kappa > 0, chain truncated at dim), sigma = 0 is Heisenberg-Weyl
/// (lowest_weight unused, chain truncated at dim).
struct SectorSignature {
    int sigma = 1;
    double lowest_weight = -0.5;
    int dim = 2;
};

/// Validates and normalizes a sector. For sigma=+1 the weight is snapped to
/// the nearest half-integer (within 1e-9) and dim is forced to 2j+1; passing
/// dim = 0 means "derive / use the default truncation".
SectorSignature make_sector(int sigma, double lowest_weight, int dim = 0);

/// Default truncation size for the non-compact and Heisenberg-Weyl chains.
inline constexpr int kDefaultTruncationDim = 64;

/// Single Lanczos coefficient b_n of the sector's ladder chain; b_0 = 0.
double lanczos_b(const SectorSignature& sector, int n);

/// b_1..b_{n_max}. For sigma=+1 requires n_max < dim (the chain terminates
/// with b_{2j+1} = 0, which may be requested).
Eigen::VectorXd lanczos_coefficients(const SectorSignature& sector, int n_max);

/// Non-compact sector built from a closed Virasoro mode triple {L_-k, L_0, L_k}:
/// lowest weight lambda_k = h/k + c(k^2-1)/(24k). Throws std::domain_error if
/// lambda_k <= 0 (non-unitary sector).
SectorSignature virasoro_weight(double h, double c, int k, int truncation_dim = kDefaultTruncationDim);

/// Cartan matrix plus a selection of simple-root sectors.
struct RootData {
    Eigen::MatrixXi cartan_matrix;
    std::vector<int> selected_roots;   // 1-based simple-root indices
    std::vector<int> sector_signs;     // sigma per selected root
};

struct CommutingCheck {
    bool ok = true;
    std::vector<std::pair<int, int>> offending_pairs;  // 1-based root indices
    std::string message;
};

/// True iff every pair of selected simple roots has vanishing mutual Cartan
/// entries, which suffices for the embedded rank-one sectors to commute.
/// Throws std::invalid_argument for a malformed Cartan matrix or selection.
CommutingCheck validate_commuting_sectors(const RootData& roots);

}  // namespace klie
