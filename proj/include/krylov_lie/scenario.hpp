// scenario.hpp — scenario descriptions, JSON config parsing, built-ins.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "krylov_lie/algebra.hpp"
#include "krylov_lie/drive.hpp"

namespace klie {

struct GridSpec {
    double t_end = 20.0;
    int n_points = 2001;  // t_start is always 0
};

struct Scenario {
    std::string name;
    std::string description;
    std::vector<SectorSignature> sectors;
    std::vector<DriveEnvelope> drives;
    std::vector<std::vector<int>> cartan_rows;
    std::optional<RootData> roots;  // required for multi-sector scenarios
    GridSpec grid;
    double wn_tol = 1e-10;
    double saturation_tol = 1e-6;
    std::set<std::string> outputs = {"wavefunction", "probabilities", "complexity",
                                     "qsl", "generator", "oracle_check"};
};

std::vector<double> make_grid(const GridSpec& grid);

/// Parses a scenario from JSON text. Field names are fixed; unknown keys are
/// rejected (std::invalid_argument).
Scenario parse_scenario(const std::string& json_text);

/// The six built-in scenarios.
std::vector<Scenario> builtin_scenarios();
std::optional<Scenario> find_builtin(const std::string& name);

}  // namespace klie
