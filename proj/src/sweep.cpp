// sweep.cpp

#include "inac/sweep.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

#include "inac/errors.hpp"

namespace inac::sweep {

using noma::Mode;
using noma::Signal;

namespace {

constexpr std::array<Signal, 2> kSignals{Signal::multicast, Signal::unicast};

// Sampling budget (elements x trials) per Monte Carlo cell on the large-L sweeps.
constexpr std::int64_t kElementTrialBudget = 20'000'000;

std::string str(std::string_view s) { return std::string(s); }

struct OutageCells {
    Cell closed_form, asymptotic, monte_carlo, ci;
    std::string note;
};

void append_note(std::string& note, std::string_view what) {
    if (!note.empty()) note += "; ";
    note += what;
}

OutageCells outage_cells(const noma::Scenario& sc, Signal sig, std::span<const double> gains) {
    OutageCells out;
    try {
        const auto cf = noma::outage_closed_form(sc, sig);
        out.closed_form = cf.value;
        if (cf.infeasible) append_note(out.note, "infeasible split");
    } catch (const NumericError& e) {
        append_note(out.note, e.what());
    }
    try {
        out.asymptotic = noma::outage_asymptotic(sc, sig).value;
    } catch (const RegionError&) {
        append_note(out.note, "asymptotic out of region");
    } catch (const NumericError& e) {
        append_note(out.note, e.what());
    }
    if (!gains.empty()) {
        const auto mc = montecarlo::outage_from_gains(sc, sig, gains);
        out.monte_carlo = mc.mean;
        out.ci = mc.half_width;
    }
    return out;
}

Cell note_cell(const std::string& note) { return note.empty() ? Cell{} : Cell{note}; }

noma::PowerSplit split_for(const config::ScenarioConfig& cfg, Mode mode) {
    return mode == cfg.mode ? cfg.split() : config::default_split(mode);
}

noma::Scenario scenario(const config::ScenarioConfig& cfg, Mode mode, const noma::PowerSplit& split,
                        double tx_dbm, int elements, const channel::RicianParams& rp) {
    channel::RisArray ris = cfg.ris();
    ris.num_elements = elements;
    return noma::make_scenario(mode, split, cfg.targets(), cfg.budget_dbm(tx_dbm), ris, rp);
}

std::vector<double> gains_for(const config::ScenarioConfig& cfg, int elements, const channel::RicianParams& rp,
                              std::int64_t trials) {
    auto mc = cfg.mc();
    mc.trials = trials;
    channel::RisArray ris = cfg.ris();
    ris.num_elements = elements;
    return montecarlo::sample_cascaded_gains(ris, rp, mc);
}

std::int64_t capped_trials(const config::ScenarioConfig& cfg, int elements) {
    const std::int64_t cap = std::max<std::int64_t>(1000, kElementTrialBudget / std::max(elements, 1));
    return std::min(cfg.mc_trials, cap);
}

SweepReport op_vs_power(const config::ScenarioConfig& cfg) {
    SweepReport r{"op-vs-power", "tx_power_dbm",
                  {"tx_power_dbm", "mode", "elements", "signal", "closed_form", "asymptotic", "monte_carlo",
                   "monte_carlo_ci95", "note"},
                  {}};
    for (int elements : {1, 16, 64, 256}) {
        const auto gains = gains_for(cfg, elements, cfg.rician(), cfg.mc_trials);
        for (Signal sig : kSignals) {
            for (double p : cfg.tx_power_dbm) {
                const auto sc = scenario(cfg, cfg.mode, cfg.split(), p, elements, cfg.rician());
                auto c = outage_cells(sc, sig, gains);
                r.add_row({p, str(noma::to_string(cfg.mode)), std::int64_t{elements}, str(noma::to_string(sig)),
                           c.closed_form, c.asymptotic, c.monte_carlo, c.ci, note_cell(c.note)});
            }
        }
    }
    return r;
}

SweepReport op_vs_elements(const config::ScenarioConfig& cfg) {
    SweepReport r{"op-vs-elements", "elements",
                  {"elements", "mode", "tx_power_dbm", "k_r", "k_g", "signal", "closed_form", "asymptotic",
                   "monte_carlo", "monte_carlo_ci95", "note"},
                  {}};
    const std::array<std::pair<double, double>, 5> factors{{{0, 0}, {1, 0}, {10, 0}, {100, 0}, {1, 1}}};
    for (const auto& [kr, kg] : factors) {
        const channel::RicianParams rp{kr, kg, cfg.k_n};
        for (int elements = 1; elements <= 512; elements *= 2) {
            const auto gains = gains_for(cfg, elements, rp, cfg.mc_trials);
            const auto sc = scenario(cfg, cfg.mode, cfg.split(), cfg.fixed_power_dbm, elements, rp);
            for (Signal sig : kSignals) {
                auto c = outage_cells(sc, sig, gains);
                r.add_row({std::int64_t{elements}, str(noma::to_string(cfg.mode)), cfg.fixed_power_dbm, kr, kg,
                           str(noma::to_string(sig)), c.closed_form, c.asymptotic, c.monte_carlo, c.ci,
                           note_cell(c.note)});
            }
        }
    }
    return r;
}

SweepReport cap_vs_power(const config::ScenarioConfig& cfg) {
    SweepReport r{"cap-vs-power", "tx_power_dbm",
                  {"tx_power_dbm", "mode", "elements", "signal", "hardened", "monte_carlo", "monte_carlo_ci95"},
                  {}};
    for (int elements : {64, 256, 1024}) {
        const auto gains = gains_for(cfg, elements, cfg.rician(), cfg.mc_trials);
        for (std::string_view sig_name : {"multicast", "unicast", "tdma"}) {
            for (double p : cfg.tx_power_dbm) {
                const auto sc = scenario(cfg, cfg.mode, cfg.split(), p, elements, cfg.rician());
                double hardened = 0.0;
                montecarlo::McEstimate mc;
                if (sig_name == "tdma") {
                    hardened = noma::capacity_tdma_hardened(sc);
                    mc = montecarlo::tdma_capacity_from_gains(sc, gains);
                } else {
                    const Signal sig = sig_name == "multicast" ? Signal::multicast : Signal::unicast;
                    hardened = noma::capacity_hardened(sc, sig);
                    mc = montecarlo::capacity_from_gains(sc, sig, gains);
                }
                r.add_row({p, str(noma::to_string(cfg.mode)), std::int64_t{elements}, str(sig_name), hardened,
                           mc.mean, mc.half_width});
            }
        }
    }
    return r;
}

SweepReport cap_vs_elements(const config::ScenarioConfig& cfg) {
    SweepReport r{"cap-vs-elements", "elements",
                  {"elements", "mode", "tx_power_dbm", "signal", "hardened", "monte_carlo", "monte_carlo_ci95",
                   "monte_carlo_trials"},
                  {}};
    for (int elements = 16; elements <= 16384; elements *= 2) {
        const auto trials = capped_trials(cfg, elements);
        const auto gains = gains_for(cfg, elements, cfg.rician(), trials);
        for (Mode mode : {Mode::CO, Mode::NO}) {
            const auto split = split_for(cfg, mode);
            const auto sc = scenario(cfg, mode, split, cfg.fixed_power_dbm, elements, cfg.rician());
            for (Signal sig : kSignals) {
                const auto mc = montecarlo::capacity_from_gains(sc, sig, gains);
                r.add_row({std::int64_t{elements}, str(noma::to_string(mode)), cfg.fixed_power_dbm,
                           str(noma::to_string(sig)), noma::capacity_hardened(sc, sig), mc.mean, mc.half_width,
                           trials});
            }
        }
    }
    return r;
}

SweepReport outage_vs_split(const config::ScenarioConfig& cfg) {
    SweepReport r{"outage-vs-split", "alpha_u_sq",
                  {"alpha_u_sq", "alpha_m_sq", "mode", "elements", "tx_power_dbm", "signal", "closed_form",
                   "asymptotic", "monte_carlo", "monte_carlo_ci95", "note"},
                  {}};
    for (int elements = 8; elements <= 512; elements *= 2) {
        const auto gains = gains_for(cfg, elements, cfg.rician(), cfg.mc_trials);
        for (Signal sig : kSignals) {
            for (double au : {0.6, 0.7, 0.8, 0.9}) {
                const noma::PowerSplit split{1.0 - au, au};
                const auto sc = scenario(cfg, Mode::NO, split, cfg.fixed_power_dbm, elements, cfg.rician());
                auto c = outage_cells(sc, sig, gains);
                r.add_row({au, split.alpha_m_sq, std::string("NO"), std::int64_t{elements}, cfg.fixed_power_dbm,
                           str(noma::to_string(sig)), c.closed_form, c.asymptotic, c.monte_carlo, c.ci,
                           note_cell(c.note)});
            }
        }
    }
    return r;
}

std::vector<Cell> constellation_row(const geometry::OrbitGeometry& orbit, double altitude_km, double elevation_deg) {
    const double angle = geometry::geocentric_angle(orbit);
    const double area_km2 = geometry::coverage_area(orbit) * 1e-6;
    Cell n;
    Cell note;
    try {
        n = geometry::min_satellites(orbit);
    } catch (const NumericError&) {
        note = std::string("zero coverage");
    }
    return {altitude_km, elevation_deg, angle, area_km2, n, note};
}

const std::vector<std::string> kConstellationColumns{"altitude_km",       "elevation_deg",  "geocentric_angle_rad",
                                                     "coverage_area_km2", "min_satellites", "note"};

SweepReport constellation(const config::ScenarioConfig& cfg) {
    SweepReport r{"constellation", "altitude_km", kConstellationColumns, {}};
    for (double alt : {500.0, 1000.0, 2000.0, 5000.0, 8000.0, 12000.0, 20000.0, 35786.0}) {
        for (double el : {0.0, 10.0, 18.0, 30.0, 45.0, 60.0, 75.0, 90.0}) {
            const geometry::OrbitGeometry orbit{cfg.earth_radius_km * 1e3, alt * 1e3, geometry::deg_to_rad(el)};
            r.add_row(constellation_row(orbit, alt, el));
        }
    }
    return r;
}

// Hardened multi-cast SNR of the INAC link; zero without a surface.
double nav_snr(const config::ScenarioConfig& cfg, Mode mode, int elements) {
    if (elements == 0) return 0.0;
    const auto sc = scenario(cfg, mode, split_for(cfg, mode), cfg.fixed_power_dbm, elements, cfg.rician());
    return noma::sinr(channel::hardened_gain(sc.moments), sc, Signal::multicast);
}

SweepReport nav_accuracy(const config::ScenarioConfig& cfg, const std::filesystem::path& dir) {
    SweepReport r{"nav-accuracy", "elements",
                  {"elements", "mode", "tx_power_dbm", "multicast_sinr", "sigma_ris_m", "sigma_floor_m", "rmse_m",
                   "note"},
                  {}};
    const auto scene = config::scene_for(cfg, dir);
    const double floor = cfg.nav_floor();
    for (Mode mode : {Mode::CO, Mode::NO}) {
        for (int elements : {0, 64, 256, 1024, 4096, 16384, 65536}) {
            const double snr = nav_snr(cfg, mode, elements);
            const double sigma = navigation::pseudorange_sigma(snr, cfg.bandwidth_hz, floor);
            Cell rmse;
            Cell note;
            try {
                rmse = navigation::position_rmse(scene, {floor, floor, floor, sigma}, cfg.nav_trials, cfg.mc_seed);
            } catch (const NumericError& e) {
                note = std::string(e.what());
            }
            if (elements == 0) note = std::string("no RIS gain");
            r.add_row({std::int64_t{elements}, str(noma::to_string(mode)), cfg.fixed_power_dbm, snr, sigma, floor,
                       rmse, note});
        }
    }
    return r;
}

std::string format_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return "NA"; }
        std::string operator()(double v) const { return fmt::format("{:.12g}", v); }
        std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

void SweepReport::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error(fmt::format("{}: row has {} cells for {} columns", figure, row.size(), columns.size()));
    }
    rows.push_back(std::move(row));
}

std::size_t SweepReport::column(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw std::out_of_range(fmt::format("{}: no column '{}'", figure, name));
    return static_cast<std::size_t>(it - columns.begin());
}

std::optional<FigureId> parse_figure(std::string_view name) {
    for (FigureId id : all_figures()) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

std::string_view to_string(FigureId id) {
    switch (id) {
        case FigureId::op_vs_power: return "op-vs-power";
        case FigureId::op_vs_elements: return "op-vs-elements";
        case FigureId::cap_vs_power: return "cap-vs-power";
        case FigureId::cap_vs_elements: return "cap-vs-elements";
        case FigureId::outage_vs_split: return "outage-vs-split";
        case FigureId::constellation: return "constellation";
        case FigureId::nav_accuracy: return "nav-accuracy";
    }
    return "unknown";
}

const std::vector<FigureId>& all_figures() {
    static const std::vector<FigureId> ids{FigureId::op_vs_power,     FigureId::op_vs_elements,
                                           FigureId::cap_vs_power,    FigureId::cap_vs_elements,
                                           FigureId::outage_vs_split, FigureId::constellation,
                                           FigureId::nav_accuracy};
    return ids;
}

SweepReport run_sweep(const config::ScenarioConfig& cfg, FigureId figure, const std::filesystem::path& config_dir) {
    cfg.validate();
    switch (figure) {
        case FigureId::op_vs_power: return op_vs_power(cfg);
        case FigureId::op_vs_elements: return op_vs_elements(cfg);
        case FigureId::cap_vs_power: return cap_vs_power(cfg);
        case FigureId::cap_vs_elements: return cap_vs_elements(cfg);
        case FigureId::outage_vs_split: return outage_vs_split(cfg);
        case FigureId::constellation: return constellation(cfg);
        case FigureId::nav_accuracy: return nav_accuracy(cfg, config_dir);
    }
    throw std::invalid_argument("run_sweep: unknown figure");
}

SweepReport analyze_report(const config::ScenarioConfig& cfg) {
    cfg.validate();
    SweepReport r{"analyze", "tx_power_dbm",
                  {"tx_power_dbm", "mode", "elements", "signal", "omega", "region_argument", "closed_form",
                   "asymptotic", "hardened_capacity", "note"},
                  {}};
    for (Signal sig : kSignals) {
        for (double p : cfg.tx_power_dbm) {
            const auto sc = cfg.scenario_dbm(p);
            auto c = outage_cells(sc, sig, {});
            const auto omega = noma::outage_threshold(sc, sig);
            r.add_row({p, str(noma::to_string(cfg.mode)), std::int64_t{cfg.ris_elements}, str(noma::to_string(sig)),
                       omega ? Cell{*omega} : Cell{}, omega ? Cell{noma::asymptotic_region_argument(sc, sig)} : Cell{},
                       c.closed_form, c.asymptotic, noma::capacity_hardened(sc, sig), note_cell(c.note)});
        }
    }
    return r;
}

SweepReport simulate_report(const config::ScenarioConfig& cfg) {
    cfg.validate();
    SweepReport r{"simulate", "tx_power_dbm",
                  {"tx_power_dbm", "mode", "elements", "signal", "closed_form", "monte_carlo", "monte_carlo_ci95",
                   "capacity", "capacity_ci95", "trials"},
                  {}};
    const auto gains = gains_for(cfg, cfg.ris_elements, cfg.rician(), cfg.mc_trials);
    for (Signal sig : kSignals) {
        for (double p : cfg.tx_power_dbm) {
            const auto sc = cfg.scenario_dbm(p);
            auto c = outage_cells(sc, sig, gains);
            const auto cap = montecarlo::capacity_from_gains(sc, sig, gains);
            r.add_row({p, str(noma::to_string(cfg.mode)), std::int64_t{cfg.ris_elements}, str(noma::to_string(sig)),
                       c.closed_form, c.monte_carlo, c.ci, cap.mean, cap.half_width, cfg.mc_trials});
        }
    }
    return r;
}

SweepReport position_report(const config::ScenarioConfig& cfg, const std::filesystem::path& config_dir) {
    cfg.validate();
    const auto scene = config::scene_for(cfg, config_dir);
    const double floor = cfg.nav_floor();
    const double snr = nav_snr(cfg, cfg.mode, cfg.ris_elements);
    const double sigma = navigation::pseudorange_sigma(snr, cfg.bandwidth_hz, floor);
    const std::array<double, 4> sigmas{floor, floor, floor, sigma};

    auto rng = montecarlo::trial_stream(cfg.mc_seed, 0, 1);
    const auto pr = navigation::synthesize_pseudoranges(scene, sigmas, rng);
    const auto fix = navigation::lsm_solve(pr, scene.geometry());
    const double err = (fix.position() - scene.true_user).norm();
    const double rmse = navigation::position_rmse(scene, sigmas, cfg.nav_trials, cfg.mc_seed);

    SweepReport r{"position", "elements",
                  {"elements", "mode", "tx_power_dbm", "multicast_sinr", "sigma_ris_m", "x_m", "y_m", "z_m",
                   "clock_bias_s", "position_error_m", "iterations", "converged", "gdop", "rmse_m"},
                  {}};
    r.add_row({std::int64_t{cfg.ris_elements}, str(noma::to_string(cfg.mode)), cfg.fixed_power_dbm, snr, sigma,
               fix.state[0], fix.state[1], fix.state[2], fix.clock_bias(), err, std::int64_t{fix.iterations_used},
               std::string(fix.converged ? "true" : "false"),
               navigation::gdop(scene.geometry(), scene.true_state()), rmse});
    return r;
}

SweepReport constellation_report(const config::ScenarioConfig& cfg) {
    cfg.validate();
    SweepReport r{"constellation", "altitude_km", kConstellationColumns, {}};
    r.add_row(constellation_row(cfg.orbit(), cfg.altitude_km, cfg.elevation_deg));
    return r;
}

std::string to_csv(const SweepReport& report) {
    std::string out;
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        if (i) out += ',';
        out += quote(report.columns[i]);
    }
    out += '\n';
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += quote(format_cell(row[i]));
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const SweepReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
    const auto text = to_csv(report);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

}  // namespace inac::sweep
