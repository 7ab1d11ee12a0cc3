// main.cpp — krylov_lie command-line scenario runner

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "krylov_lie/runner.hpp"
#include "krylov_lie/scenario.hpp"

namespace {

int parallelism_cap(std::size_t jobs) {
    unsigned cap = std::thread::hardware_concurrency();
    if (cap == 0) cap = 1;
    if (const char* env = std::getenv("KRYLOV_LIE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) cap = static_cast<unsigned>(v);
    }
    return static_cast<int>(std::min<std::size_t>(cap, jobs));
}

klie::Scenario load_scenario(const std::string& spec) {
    if (auto builtin = klie::find_builtin(spec)) return *builtin;
    std::ifstream in(spec);
    if (!in) {
        throw std::invalid_argument("unknown scenario '" + spec + "' (not a builtin name or readable file)");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return klie::parse_scenario(buf.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Krylov-space dynamics for rank-one Lie-algebra drives"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "List built-in scenarios");

    std::vector<std::string> specs;
    klie::RunOptions opts;
    bool no_oracle = false;
    auto* run_cmd = app.add_subcommand("run", "Run scenarios (builtin names, config files, or 'all')");
    run_cmd->add_option("scenario", specs, "builtin name(s), config file(s), or 'all'")->required();
    run_cmd->add_option("--out", opts.out_dir, "output directory (default '.')");
    run_cmd->add_option("--tol", opts.tol_override, "Wei-Norman integration tolerance override");
    run_cmd->add_flag("--no-oracle", no_oracle, "skip the direct-evolution cross-check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list_cmd->parsed()) {
        for (const auto& sc : klie::builtin_scenarios()) {
            std::cout << sc.name << "  -  " << sc.description << "\n";
        }
        return 0;
    }

    opts.oracle = !no_oracle;

    std::vector<klie::Scenario> scenarios;
    try {
        if (specs.size() == 1 && specs[0] == "all") {
            scenarios = klie::builtin_scenarios();
        } else {
            for (const auto& spec : specs) scenarios.push_back(load_scenario(spec));
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }

    // batched execution: at most `workers` scenarios in flight
    const std::size_t workers = static_cast<std::size_t>(parallelism_cap(scenarios.size()));
    std::vector<std::future<klie::RunResult>> futures(scenarios.size());
    std::vector<klie::RunResult> results(scenarios.size());
    for (std::size_t base = 0; base < scenarios.size(); base += workers) {
        const std::size_t end = std::min(scenarios.size(), base + workers);
        for (std::size_t i = base; i < end; ++i) {
            futures[i] = std::async(std::launch::async,
                                    [&scenarios, &opts, i] { return klie::run_scenario(scenarios[i], opts); });
        }
        for (std::size_t i = base; i < end; ++i) results[i] = futures[i].get();
    }

    bool config_error = false;
    bool check_failed = false;
    for (const auto& res : results) {
        if (!res.error.empty()) {
            std::cerr << res.name << ": error: " << res.error << "\n";
            config_error = true;
            continue;
        }
        std::cout << "scenario " << res.name << ": " << (res.pass ? "pass" : "FAIL") << "\n";
        for (const auto& c : res.checks) {
            std::cout << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << "  value=" << c.value
                      << " tol=" << c.tol << "\n";
            if (!c.pass) check_failed = true;
        }
        for (const auto& f : res.files) std::cout << "  wrote " << f << "\n";
        if (!res.pass) check_failed = true;
    }
    if (config_error) return 2;
    return check_failed ? 1 : 0;
}
