// runner.cpp — scenario pipeline and writers

#include "krylov_lie/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "krylov_lie/generator.hpp"
#include "krylov_lie/krylov.hpp"
#include "krylov_lie/oracle.hpp"
#include "krylov_lie/qsl.hpp"

namespace klie {

namespace {

using nlohmann::ordered_json;

struct SectorRun {
    SectorSignature sector;
    std::vector<WNState> wn;                  // sigma = +-1
    std::vector<HWDisplacement> disp;         // sigma = 0
    std::vector<KrylovWavefunction> kry;
    std::vector<GeneratorParams> gen;
    std::vector<QslReport> qsl;
    SaturationScan scan;
    double unitarity_defect = 0.0;
    double norm_defect = 0.0;
    double tail_max = 0.0;
    double k_sum_defect = 0.0;
    double var_sum_defect = 0.0;
    double gap_identity_defect = 0.0;
    double gap_min = 0.0;
    double oracle_deviation = -1.0;  // < 0: not run
    int nonhermitian_points = 0;
};

void append_check(RunResult& res, const std::string& name, double value, double tol, bool pass_if_below = true) {
    CheckResult c;
    c.name = name;
    c.value = value;
    c.tol = tol;
    c.pass = pass_if_below ? (value <= tol) : (value >= tol);
    if (!c.pass) res.pass = false;
    res.checks.push_back(c);
}

SectorRun run_sector(const Scenario& sc, std::size_t k, const std::vector<double>& grid, double tol,
                     const RunOptions& opts) {
    SectorRun run;
    run.sector = sc.sectors[k];
    const auto gamma = coupling_function(sc.drives[k], sc.cartan_rows[k]);
    const auto stops = envelope_breakpoints(sc.drives[k]);

    if (run.sector.sigma == 0) {
        run.disp = hw_displacement(gamma, grid, tol, stops);
        run.kry.reserve(grid.size());
        for (const auto& d : run.disp) run.kry.push_back(hw_wavefunction(d, run.sector.dim));
        run.qsl.reserve(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            run.qsl.push_back(qsl_point(run.sector, gamma(grid[i]), run.disp[i], run.kry[i]));
        }
    } else {
        run.wn = integrate_wn(run.sector, gamma, grid, tol, stops);
        run.kry.reserve(grid.size());
        for (const auto& s : run.wn) {
            const double shell = std::norm(s.a) + run.sector.sigma * std::norm(s.b);
            run.unitarity_defect = std::max(run.unitarity_defect, std::abs(shell - 1.0));
            run.kry.push_back(wavefunction_from_wn(run.sector, s));
        }
        run.gen = invert_series(run.wn, run.sector.sigma);
        for (const auto& g : run.gen) {
            if (!g.hermitian) ++run.nonhermitian_points;
        }
        run.qsl.reserve(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            run.qsl.push_back(qsl_point(run.sector, gamma(grid[i]), run.wn[i], run.kry[i]));
        }
    }

    run.gap_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& kry = run.kry[i];
        run.norm_defect = std::max(run.norm_defect, std::abs(kry.probabilities.sum() - 1.0));
        if (run.sector.sigma != 1) {
            run.tail_max = std::max(run.tail_max, kry.probabilities[kry.probabilities.size() - 1]);
        }
        double k_sum = 0.0, k2_sum = 0.0;
        for (int n = 0; n < kry.sector.dim; ++n) {
            k_sum += n * kry.probabilities[n];
            k2_sum += static_cast<double>(n) * n * kry.probabilities[n];
        }
        run.k_sum_defect = std::max(run.k_sum_defect, std::abs(k_sum - kry.complexity));
        const double var_sum = k2_sum - k_sum * k_sum;
        run.var_sum_defect = std::max(
            run.var_sum_defect,
            std::abs(var_sum - kry.complexity_std * kry.complexity_std));
        run.gap_identity_defect = std::max(
            run.gap_identity_defect,
            std::abs(run.qsl[i].gap - run.qsl[i].covariance * run.qsl[i].covariance));
        run.gap_min = std::min(run.gap_min, run.qsl[i].gap);
    }
    run.scan = saturation_scan(run.qsl, run.sector.sigma, sc.saturation_tol);

    if (opts.oracle && sc.outputs.count("oracle_check")) {
        const int oracle_dim = run.sector.sigma == 1 ? run.sector.dim : 2 * run.sector.dim;
        const auto rep = oracle::build_rep(run.sector, run.sector.sigma == 1 ? 0 : oracle_dim);
        const auto states = oracle::direct_evolve(rep, gamma, grid, opts.oracle_steps_per_unit);
        double dev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            for (int n = 0; n < run.sector.dim; ++n) {
                dev = std::max(dev, std::abs(std::norm(states[i][n]) - run.kry[i].probabilities[n]));
            }
        }
        run.oracle_deviation = dev;
    }
    return run;
}

void write_series_csv(const std::string& path, const SectorRun& run) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    const int dim = run.sector.dim;
    if (run.sector.sigma == 0) {
        out << "t,re_alpha,im_alpha,phi,K,delta_K,dK_dt,bound,gap";
    } else {
        out << "t,re_z,im_z,re_eta,im_eta,K,delta_K,dK_dt,bound,gap";
    }
    for (int n = 0; n < dim; ++n) out << ",P_" << n;
    out << "\n";
    for (std::size_t i = 0; i < run.kry.size(); ++i) {
        const auto& kry = run.kry[i];
        const auto& q = run.qsl[i];
        out << format_cell(kry.t);
        if (run.sector.sigma == 0) {
            const auto& d = run.disp[i];
            out << ',' << format_cell(d.alpha.real()) << ',' << format_cell(d.alpha.imag()) << ','
                << format_cell(d.phi);
        } else {
            const auto& s = run.wn[i];
            out << ',' << format_cell(s.z.real()) << ',' << format_cell(s.z.imag()) << ','
                << format_cell(s.eta.real()) << ',' << format_cell(s.eta.imag());
        }
        out << ',' << format_cell(kry.complexity) << ',' << format_cell(kry.complexity_std) << ','
            << format_cell(q.dK_dt) << ',' << format_cell(q.bound) << ',' << format_cell(q.gap);
        for (int n = 0; n < dim; ++n) out << ',' << format_cell(kry.probabilities[n]);
        out << "\n";
    }
}

void write_generator_csv(const std::string& path, const SectorRun& run) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "t,theta0,re_theta_plus,im_theta_plus,re_chi,im_chi\n";
    if (run.sector.sigma == 0) {
        for (std::size_t i = 0; i < run.disp.size(); ++i) {
            const auto& d = run.disp[i];
            out << format_cell(d.t) << ',' << format_cell(-d.phi) << ',' << format_cell(d.alpha.real())
                << ',' << format_cell(d.alpha.imag()) << ",0,0\n";
        }
        return;
    }
    for (std::size_t i = 0; i < run.gen.size(); ++i) {
        const auto& g = run.gen[i];
        out << format_cell(run.wn[i].t) << ',' << format_cell(g.theta0.real()) << ','
            << format_cell(g.theta_plus.real()) << ',' << format_cell(g.theta_plus.imag()) << ','
            << format_cell(g.chi.real()) << ',' << format_cell(g.chi.imag()) << "\n";
    }
}

}  // namespace

std::string format_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

RunResult run_scenario(const Scenario& sc, const RunOptions& opts) {
    RunResult res;
    res.name = sc.name;
    try {
        const double tol = opts.tol_override > 0.0 ? opts.tol_override : sc.wn_tol;
        const auto grid = make_grid(sc.grid);
        if (sc.sectors.size() > 1) {
            if (!sc.roots) throw std::invalid_argument("multi-sector scenario requires root data");
            const auto check = validate_commuting_sectors(*sc.roots);
            if (!check.ok) throw std::invalid_argument(check.message);
        }

        std::vector<SectorRun> runs;
        runs.reserve(sc.sectors.size());
        for (std::size_t k = 0; k < sc.sectors.size(); ++k) {
            runs.push_back(run_sector(sc, k, grid, tol, opts));
        }

        std::filesystem::create_directories(opts.out_dir);
        const bool multi = runs.size() > 1;
        ordered_json summary;
        summary["name"] = sc.name;
        summary["description"] = sc.description;
        summary["grid"] = {{"t_end", sc.grid.t_end}, {"n_points", sc.grid.n_points}};

        double k_total_final = 0.0;
        ordered_json sector_summaries = ordered_json::array();
        for (std::size_t k = 0; k < runs.size(); ++k) {
            const auto& run = runs[k];
            const std::string prefix =
                opts.out_dir + "/" + sc.name + (multi ? "_sector" + std::to_string(k + 1) : "");
            const std::string series_path = prefix + "_series.csv";
            write_series_csv(series_path, run);
            res.files.push_back(series_path);
            if (sc.outputs.count("generator")) {
                const std::string gen_path = prefix + "_generator.csv";
                write_generator_csv(gen_path, run);
                res.files.push_back(gen_path);
            }

            const std::string tag = multi ? "sector" + std::to_string(k + 1) + ": " : "";
            if (run.sector.sigma != 0) {
                append_check(res, tag + "unitarity |a|^2+sigma|b|^2 = 1", run.unitarity_defect, 1e-9);
            }
            append_check(res, tag + "probability normalization", run.norm_defect, 1e-9);
            if (run.sector.sigma != 1) {
                append_check(res, tag + "truncation tail", run.tail_max, kTruncationTailTol);
            }
            append_check(res, tag + "complexity closed form vs sum", run.k_sum_defect, 1e-10);
            append_check(res, tag + "variance closed form vs sum", run.var_sum_defect, 1e-10);
            append_check(res, tag + "gap = covariance^2", run.gap_identity_defect, 1e-8);
            append_check(res, tag + "gap >= -1e-9", run.gap_min, -1e-9, false);
            if (run.oracle_deviation >= 0.0) {
                append_check(res, tag + "oracle probability deviation", run.oracle_deviation, opts.oracle_tol);
            }

            const double k_final = run.kry.back().complexity;
            k_total_final += k_final;
            ordered_json sector_summary;
            sector_summary["sigma"] = run.sector.sigma;
            sector_summary["lowest_weight"] = run.sector.lowest_weight;
            sector_summary["dim"] = run.sector.dim;
            sector_summary["k_final"] = k_final;
            sector_summary["saturation"] = {{"classification", run.scan.classification},
                                            {"persistent", run.scan.persistent},
                                            {"saturated_points", run.scan.saturated_points},
                                            {"accidental_points", run.scan.accidental_points},
                                            {"accidental_crossings", run.scan.accidental_crossings}};
            sector_summary["max_oracle_deviation"] =
                run.oracle_deviation >= 0.0 ? ordered_json(run.oracle_deviation) : ordered_json(nullptr);
            sector_summary["truncation_tail_max"] = run.tail_max;
            sector_summary["nonhermitian_generator_points"] = run.nonhermitian_points;
            sector_summaries.push_back(sector_summary);
        }

        if (multi) {
            summary["sectors"] = sector_summaries;
            summary["k_total_final"] = k_total_final;
        } else {
            summary.update(sector_summaries[0]);
        }

        ordered_json checks = ordered_json::array();
        for (const auto& c : res.checks) {
            checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"tol", c.tol}});
        }
        summary["checks"] = checks;
        summary["pass"] = res.pass;

        const std::string summary_path = opts.out_dir + "/" + sc.name + "_summary.json";
        {
            std::ofstream out(summary_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + summary_path);
            out << summary.dump(2) << "\n";
        }
        res.files.push_back(summary_path);
        res.summary_json = summary.dump(2);
    } catch (const std::exception& err) {
        res.pass = false;
        res.error = err.what();
    }
    return res;
}

}  // namespace klie
