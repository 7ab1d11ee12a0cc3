// scenario.cpp — config schema, strict parsing, the six built-ins

#include "krylov_lie/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace klie {

namespace {

using nlohmann::json;

constexpr double kPi = 3.141592653589793238462643383279502884;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
        }
    }
}

double need_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        throw std::invalid_argument("config: " + where + " requires numeric field '" + key + "'");
    }
    return obj[key].get<double>();
}

EnvelopeForm parse_form(const json& obj, const std::string& where) {
    if (!obj.is_object() || !obj.contains("tag") || !obj["tag"].is_string()) {
        throw std::invalid_argument("config: " + where + " must be an object with a string 'tag'");
    }
    const std::string tag = obj["tag"].get<std::string>();
    if (tag == "constant_phase") {
        reject_unknown(obj, {"tag", "r", "delta"}, where);
        return constant_amplitude(need_number(obj, "r", where),
                                  obj.contains("delta") ? need_number(obj, "delta", where) : 0.0);
    }
    if (tag == "sech_pulse") {
        reject_unknown(obj, {"tag", "omega0", "T"}, where);
        return SechPulse{need_number(obj, "omega0", where), need_number(obj, "T", where)};
    }
    if (tag == "piecewise_constant_quench") {
        reject_unknown(obj, {"tag", "omega0", "omega1", "tau"}, where);
        return PiecewiseConstantQuench{need_number(obj, "omega0", where), need_number(obj, "omega1", where),
                                       need_number(obj, "tau", where)};
    }
    if (tag == "rotating_field") {
        reject_unknown(obj, {"tag", "theta0", "Omega", "h"}, where);
        return RotatingField{need_number(obj, "theta0", where), need_number(obj, "Omega", where),
                             obj.contains("h") ? need_number(obj, "h", where) : 1.0};
    }
    if (tag == "dragged_cosine") {
        reject_unknown(obj, {"tag", "x0", "omega", "m"}, where);
        return DraggedCosine{need_number(obj, "x0", where), need_number(obj, "omega", where),
                             obj.contains("m") ? need_number(obj, "m", where) : 1.0};
    }
    if (tag == "tabulated") {
        reject_unknown(obj, {"tag", "times", "values", "interpolation"}, where);
        if (obj.contains("interpolation") && obj["interpolation"] != "linear") {
            throw std::invalid_argument("config: tabulated interpolation must be 'linear'");
        }
        Tabulated tab;
        for (const auto& v : obj.at("times")) tab.times.push_back(v.get<double>());
        for (const auto& v : obj.at("values")) {
            if (v.is_number()) {
                tab.values.emplace_back(v.get<double>(), 0.0);
            } else if (v.is_array() && v.size() == 2) {
                tab.values.emplace_back(v[0].get<double>(), v[1].get<double>());
            } else {
                throw std::invalid_argument("config: tabulated values must be numbers or [re, im] pairs");
            }
        }
        for (std::size_t i = 1; i < tab.times.size(); ++i) {
            if (!(tab.times[i] > tab.times[i - 1])) {
                throw std::invalid_argument("config: tabulated times must be strictly increasing");
            }
        }
        return tab;
    }
    throw std::invalid_argument("config: unknown drive tag '" + tag + "' in " + where);
}

SectorSignature parse_sector(const json& obj, const std::string& where) {
    reject_unknown(obj, {"sigma", "lowest_weight", "dim"}, where);
    if (!obj.contains("sigma") || !obj["sigma"].is_number_integer()) {
        throw std::invalid_argument("config: " + where + " requires integer 'sigma'");
    }
    const int sigma = obj["sigma"].get<int>();
    const double lw = obj.contains("lowest_weight") ? need_number(obj, "lowest_weight", where) : 0.0;
    const int dim = obj.contains("dim") ? obj["dim"].get<int>() : 0;
    return make_sector(sigma, lw, dim);
}

DriveEnvelope parse_drive(const json& drive_obj, const json* cartan_obj, const std::string& where) {
    DriveEnvelope env;
    env.form = parse_form(drive_obj, where);
    if (cartan_obj) {
        if (!cartan_obj->is_array()) throw std::invalid_argument("config: cartan_drives must be an array");
        int idx = 0;
        for (const auto& g : *cartan_obj) {
            env.cartan_drives.push_back(parse_form(g, "cartan_drives[" + std::to_string(idx++) + "]"));
        }
    }
    return env;
}

std::vector<int> parse_row(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw std::invalid_argument("config: " + where + " must be an array of integers");
    std::vector<int> row;
    for (const auto& v : arr) {
        if (!v.is_number_integer()) throw std::invalid_argument("config: " + where + " entries must be integers");
        row.push_back(v.get<int>());
    }
    return row;
}

RootData parse_roots(const json& obj) {
    reject_unknown(obj, {"cartan_matrix", "selected_roots", "sector_signs"}, "root_data");
    RootData roots;
    const auto& mat = obj.at("cartan_matrix");
    const int rank = static_cast<int>(mat.size());
    roots.cartan_matrix.resize(rank, rank);
    for (int i = 0; i < rank; ++i) {
        if (static_cast<int>(mat[i].size()) != rank) {
            throw std::invalid_argument("config: cartan_matrix must be square");
        }
        for (int j = 0; j < rank; ++j) roots.cartan_matrix(i, j) = mat[i][j].get<int>();
    }
    for (const auto& v : obj.at("selected_roots")) roots.selected_roots.push_back(v.get<int>());
    if (obj.contains("sector_signs")) {
        for (const auto& v : obj["sector_signs"]) roots.sector_signs.push_back(v.get<int>());
    }
    return roots;
}

}  // namespace

std::vector<double> make_grid(const GridSpec& grid) {
    if (grid.n_points < 2) throw std::invalid_argument("grid: n_points must be >= 2");
    if (!(grid.t_end > 0.0)) throw std::invalid_argument("grid: t_end must be > 0");
    std::vector<double> ts(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) {
        ts[i] = grid.t_end * static_cast<double>(i) / (grid.n_points - 1);
    }
    ts[0] = 0.0;
    ts.back() = grid.t_end;
    return ts;
}

Scenario parse_scenario(const std::string& json_text) {
    json root = json::parse(json_text);
    reject_unknown(root,
                   {"name", "description", "sector", "sectors", "drive", "drives", "cartan_drives",
                    "cartan_row", "cartan_rows", "root_data", "grid", "tolerances", "outputs"},
                   "scenario");
    Scenario sc;
    sc.name = root.contains("name") ? root["name"].get<std::string>() : "scenario";
    if (root.contains("description")) sc.description = root["description"].get<std::string>();

    const bool plural = root.contains("sectors");
    if (plural == root.contains("sector")) {
        throw std::invalid_argument("config: provide exactly one of 'sector' or 'sectors'");
    }
    if (plural) {
        if (!root.contains("drives") || !root.contains("cartan_rows")) {
            throw std::invalid_argument("config: multi-sector scenarios need 'drives' and 'cartan_rows'");
        }
        const auto& sectors = root["sectors"];
        const auto& drives = root["drives"];
        const auto& rows = root["cartan_rows"];
        if (sectors.size() != drives.size() || sectors.size() != rows.size() || sectors.empty()) {
            throw std::invalid_argument("config: sectors, drives and cartan_rows must have equal nonzero length");
        }
        for (std::size_t k = 0; k < sectors.size(); ++k) {
            sc.sectors.push_back(parse_sector(sectors[k], "sectors[" + std::to_string(k) + "]"));
            const json& dk = drives[k];
            std::set<std::string> allowed{"tag",   "r",     "delta",  "omega0", "T",
                                          "omega1", "tau",  "theta0", "Omega",  "h",
                                          "x0",    "omega", "m",      "times",  "values",
                                          "interpolation", "cartan_drives"};
            reject_unknown(dk, allowed, "drives[" + std::to_string(k) + "]");
            const json* cart = dk.contains("cartan_drives") ? &dk["cartan_drives"] : nullptr;
            json form_only = dk;
            form_only.erase("cartan_drives");
            sc.drives.push_back(parse_drive(form_only, cart, "drives[" + std::to_string(k) + "]"));
            sc.cartan_rows.push_back(parse_row(rows[k], "cartan_rows[" + std::to_string(k) + "]"));
        }
        if (!root.contains("root_data")) {
            throw std::invalid_argument("config: multi-sector scenarios require 'root_data'");
        }
    } else {
        if (!root.contains("drive")) throw std::invalid_argument("config: missing 'drive'");
        sc.sectors.push_back(parse_sector(root["sector"], "sector"));
        const json* cart = root.contains("cartan_drives") ? &root["cartan_drives"] : nullptr;
        sc.drives.push_back(parse_drive(root["drive"], cart, "drive"));
        sc.cartan_rows.push_back(root.contains("cartan_row") ? parse_row(root["cartan_row"], "cartan_row")
                                                             : std::vector<int>{});
    }
    if (root.contains("root_data")) sc.roots = parse_roots(root["root_data"]);

    if (root.contains("grid")) {
        reject_unknown(root["grid"], {"t_end", "n_points"}, "grid");
        sc.grid.t_end = need_number(root["grid"], "t_end", "grid");
        if (root["grid"].contains("n_points")) sc.grid.n_points = root["grid"]["n_points"].get<int>();
        if (sc.grid.n_points < 2 || !(sc.grid.t_end > 0.0)) {
            throw std::invalid_argument("config: grid needs n_points >= 2 and t_end > 0");
        }
    }
    if (root.contains("tolerances")) {
        reject_unknown(root["tolerances"], {"wn", "saturation"}, "tolerances");
        if (root["tolerances"].contains("wn")) sc.wn_tol = root["tolerances"]["wn"].get<double>();
        if (root["tolerances"].contains("saturation")) {
            sc.saturation_tol = root["tolerances"]["saturation"].get<double>();
        }
    }
    if (root.contains("outputs")) {
        sc.outputs.clear();
        for (const auto& v : root["outputs"]) {
            const std::string out = v.get<std::string>();
            static const std::set<std::string> known{"wavefunction", "probabilities", "complexity",
                                                     "qsl", "generator", "oracle_check"};
            if (!known.count(out)) throw std::invalid_argument("config: unknown output '" + out + "'");
            sc.outputs.insert(out);
        }
    }

    for (std::size_t k = 0; k < sc.sectors.size(); ++k) {
        if (sc.cartan_rows[k].size() != sc.drives[k].cartan_drives.size()) {
            throw std::invalid_argument("config: cartan_row length must match cartan_drives length");
        }
    }
    if (sc.sectors.size() > 1) {
        if (!sc.roots) throw std::invalid_argument("config: multi-sector scenarios require root_data");
        const auto check = validate_commuting_sectors(*sc.roots);
        if (!check.ok) throw std::invalid_argument("config: " + check.message);
    }
    return sc;
}

std::vector<Scenario> builtin_scenarios() {
    std::vector<Scenario> all;

    {
        Scenario sc;
        sc.name = "su4_sech";
        sc.description = "su(4) multilevel sech pulse on the first simple-root sector (j=1), "
                         "Cartan phases cancelling";
        sc.sectors = {make_sector(1, -1.0)};
        DriveEnvelope env;
        env.form = SechPulse{1.0, 1.0};
        env.cartan_drives = {SechPulse{1.0, 1.0}, SechPulse{2.0, 1.0}, SechPulse{1.0, 1.0}};
        sc.drives = {env};
        sc.cartan_rows = {{2, -1, 0}};
        RootData roots;
        roots.cartan_matrix.resize(3, 3);
        roots.cartan_matrix << 2, -1, 0, -1, 2, -1, 0, -1, 2;
        roots.selected_roots = {1};
        roots.sector_signs = {1};
        sc.roots = roots;
        sc.grid = {20.0, 2001};
        all.push_back(sc);
    }
    {
        Scenario sc;
        sc.name = "ho_quench";
        sc.description = "dilated harmonic oscillator, sudden frequency quench 0.6 -> 2 -> 0.6 at tau=10 "
                         "(squeezing sector, kappa=1/4)";
        sc.sectors = {make_sector(-1, 0.25, 96)};
        DriveEnvelope env;
        env.form = PiecewiseConstantQuench{0.6, 2.0, 10.0};
        env.cartan_drives = {PiecewiseConstantQuench{0.6, 2.0, 10.0}};
        sc.drives = {env};
        sc.cartan_rows = {{2}};
        sc.grid = {20.0, 2001};
        sc.wn_tol = 1e-12;  // the strong quench drifts off the unitarity shell faster
        all.push_back(sc);
    }
    {
        Scenario sc;
        sc.name = "virasoro_sector";
        sc.description = "closed Virasoro mode triple k=2 (h=0, c=24, lambda_k=3/2) under a real sech drive";
        sc.sectors = {virasoro_weight(0.0, 24.0, 2)};
        DriveEnvelope env;
        env.form = SechPulse{0.6, 1.0};
        sc.drives = {env};
        sc.cartan_rows = {{}};
        sc.grid = {20.0, 2001};
        all.push_back(sc);
    }
    {
        Scenario sc;
        sc.name = "rotating_spin";
        sc.description = "spin-1 in a rotating magnetic field, theta0 = pi/2, Omega = 0.5";
        sc.sectors = {make_sector(1, -1.0)};
        DriveEnvelope env;
        env.form = RotatingField{kPi / 2.0, 0.5, 1.0};
        env.cartan_drives = {RotatingField{kPi / 2.0, 0.5, 1.0}};
        sc.drives = {env};
        sc.cartan_rows = {{1}};
        sc.grid = {20.0, 2001};
        all.push_back(sc);
    }
    {
        Scenario sc;
        sc.name = "dragged_oscillator";
        sc.description = "harmonically dragged oscillator x0(t) = 0.5 cos(2t) (Heisenberg-Weyl sector)";
        sc.sectors = {make_sector(0, 0.0, 64)};
        DriveEnvelope env;
        env.form = DraggedCosine{0.5, 2.0, 1.0};
        env.cartan_drives = {DraggedCosine{0.5, 2.0, 1.0}};
        sc.drives = {env};
        sc.cartan_rows = {{1}};
        sc.grid = {8.0, 2001};
        all.push_back(sc);
    }
    {
        Scenario sc;
        sc.name = "so7_two_sector";
        sc.description = "so(7) end roots alpha_1 (j=1) and alpha_3 (j=1/2): two commuting sectors "
                         "under independent sech drives";
        sc.sectors = {make_sector(1, -1.0), make_sector(1, -0.5)};
        DriveEnvelope e1;
        e1.form = SechPulse{1.0, 1.0};
        DriveEnvelope e3;
        e3.form = SechPulse{0.8, 1.0};
        sc.drives = {e1, e3};
        sc.cartan_rows = {{}, {}};
        RootData roots;
        roots.cartan_matrix.resize(3, 3);
        roots.cartan_matrix << 2, -1, 0, -1, 2, -2, 0, -1, 2;
        roots.selected_roots = {1, 3};
        roots.sector_signs = {1, 1};
        sc.roots = roots;
        sc.grid = {20.0, 2001};
        all.push_back(sc);
    }
    return all;
}

std::optional<Scenario> find_builtin(const std::string& name) {
    for (auto& sc : builtin_scenarios()) {
        if (sc.name == name) return sc;
    }
    return std::nullopt;
}

}  // namespace klie
