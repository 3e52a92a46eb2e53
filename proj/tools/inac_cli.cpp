// inac_cli.cpp - command line front end: analysis, simulation, positioning and figure sweeps.
//
//   inac analyze   [--config F] [--out F]
//   inac simulate  [--config F] [--seed S] [--trials N] [--out F]
//   inac position  [--config F] [--seed S] [--trials N] [--out F]
//   inac constellation [--config F] [--out F]
//   inac reproduce <figure-id> [--config F] [--seed S] [--trials N] [--out F]
//
// Exit status: 0 ok, 2 bad config or usage, 3 numeric/region failure.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "inac/config.hpp"
#include "inac/errors.hpp"
#include "inac/sweep.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> trials;
    std::string out;
    std::string figure;
};

inac::config::ScenarioConfig load(const Options& opt) {
    auto cfg = opt.config_path.empty() ? inac::config::parse_config("") : inac::config::load_config(opt.config_path);
    if (opt.seed) cfg.mc_seed = *opt.seed;
    if (opt.trials) {
        cfg.mc_trials = *opt.trials;
        cfg.nav_trials = *opt.trials;
    }
    cfg.validate();
    return cfg;
}

std::filesystem::path config_dir(const Options& opt) {
    if (opt.config_path.empty()) return {};
    return std::filesystem::path(opt.config_path).parent_path();
}

void write(const inac::sweep::SweepReport& report, const Options& opt) {
    if (opt.out.empty()) {
        std::cout << inac::sweep::to_csv(report);
    } else {
        inac::sweep::emit_csv(report, opt.out);
    }
}

// Outage slope on a 0.01 dB grid over the config's power range, on stderr
// so stdout stays pure CSV.
void print_diversity(const inac::config::ScenarioConfig& cfg) {
    const auto [lo, hi] = std::minmax_element(cfg.tx_power_dbm.begin(), cfg.tx_power_dbm.end());
    const double noise = cfg.budget_dbm(*lo).noise_power;
    std::vector<double> snr;
    for (int i = 0; *lo + 0.01 * i <= *hi + 1e-9; ++i) {
        snr.push_back(inac::geometry::dbm_to_watts(*lo + 0.01 * i) / noise);
    }
    const auto sc = cfg.scenario_dbm(cfg.tx_power_dbm.front());
    for (auto sig : {inac::noma::Signal::multicast, inac::noma::Signal::unicast}) {
        try {
            const auto d = inac::noma::diversity_order_estimate(sc, sig, snr);
            fmt::print(stderr, "diversity {}: slope {:.4g} over {} points (m3 = {:.4g})\n",
                       inac::noma::to_string(sig), d.slope, d.points_used, d.m3_prediction);
        } catch (const inac::DomainError& e) {
            fmt::print(stderr, "diversity {}: not estimable: {}\n", inac::noma::to_string(sig), e.what());
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NOMA-RIS satellite INAC link analysis"};
    app.fallthrough();
    app.require_subcommand(1);

    Options opt;
    app.add_option("--config", opt.config_path, "scenario file (key = value)")->check(CLI::ExistingFile);
    app.add_option("--seed", opt.seed, "master seed for Monte Carlo streams");
    app.add_option("--trials", opt.trials, "Monte Carlo trials (also navigation trials)");
    app.add_option("--out", opt.out, "write CSV here instead of stdout");

    auto* analyze = app.add_subcommand("analyze", "closed-form and asymptotic outage over the power grid");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo outage and capacity over the power grid");
    auto* position = app.add_subcommand("position", "least-squares fix and RMSE for the configured scene");
    auto* constellation = app.add_subcommand("constellation", "coverage and satellite count of the configured orbit");
    auto* reproduce = app.add_subcommand("reproduce", "run one figure sweep");
    std::vector<std::string> names;
    for (auto id : inac::sweep::all_figures()) names.emplace_back(inac::sweep::to_string(id));
    reproduce->add_option("figure", opt.figure, "figure id")->required()->check(CLI::IsMember(names));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const auto cfg = load(opt);
        if (analyze->parsed()) {
            write(inac::sweep::analyze_report(cfg), opt);
            print_diversity(cfg);
        } else if (simulate->parsed()) {
            write(inac::sweep::simulate_report(cfg), opt);
        } else if (position->parsed()) {
            write(inac::sweep::position_report(cfg, config_dir(opt)), opt);
        } else if (constellation->parsed()) {
            write(inac::sweep::constellation_report(cfg), opt);
        } else if (reproduce->parsed()) {
            const auto id = inac::sweep::parse_figure(opt.figure);
            write(inac::sweep::run_sweep(cfg, *id, config_dir(opt)), opt);
        }
    } catch (const inac::ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kExitConfig;
    } catch (const inac::NumericError& e) {
        fmt::print(stderr, "numeric error: {}\n", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 0;
}
