// sweep.hpp
//
// Figure sweeps and one-off reports as tables of cells, plus CSV output.
// Row order is fixed by the grid order, so a given config and seed always
// produce the same bytes.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "inac/config.hpp"

namespace inac::sweep {

/// Empty cells (monostate) are written as NA.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct SweepReport {
    std::string figure;
    std::string x_name;  // independent variable, always the first column
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    /// Index of a column by name; throws std::out_of_range when absent.
    std::size_t column(std::string_view name) const;
};

enum class FigureId {
    op_vs_power,
    op_vs_elements,
    cap_vs_power,
    cap_vs_elements,
    outage_vs_split,
    constellation,
    nav_accuracy,
};

std::optional<FigureId> parse_figure(std::string_view name);
std::string_view to_string(FigureId id);
const std::vector<FigureId>& all_figures();

/// `config_dir` resolves a relative nav.scene path.
SweepReport run_sweep(const config::ScenarioConfig& cfg, FigureId figure,
                      const std::filesystem::path& config_dir = {});

/// Closed form and asymptotic outage over the config's power grid.
SweepReport analyze_report(const config::ScenarioConfig& cfg);
/// Monte Carlo outage and capacity over the config's power grid.
SweepReport simulate_report(const config::ScenarioConfig& cfg);
/// One cold-start fix plus the RMSE of the configured scene at the fixed power.
SweepReport position_report(const config::ScenarioConfig& cfg, const std::filesystem::path& config_dir = {});
/// Coverage of the configured orbit.
SweepReport constellation_report(const config::ScenarioConfig& cfg);

std::string to_csv(const SweepReport& report);
/// Throws std::runtime_error when the file cannot be written.
void emit_csv(const SweepReport& report, const std::filesystem::path& path);

}  // namespace inac::sweep
