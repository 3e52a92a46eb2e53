// config.hpp
//
// Flat key=value scenario files with dotted namespaces, e.g.
//
//   mode = CO
//   ris.elements = 256
//   link.tx_power_dbm = 30, 35, 40
//
// Values are stored in the units their keys name (dB, dBm, km, degrees);
// the accessors convert to SI. Unspecified keys take the defaults below.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inac/channel.hpp"
#include "inac/geometry.hpp"
#include "inac/montecarlo.hpp"
#include "inac/navigation.hpp"
#include "inac/noma.hpp"

namespace inac::config {

struct KeyValue {
    int line = 0;
    std::string key;
    std::string value;
};

/// Splits `text` into key=value entries; '#' starts a comment. Throws
/// ConfigError with `source:line` diagnostics on malformed lines.
std::vector<KeyValue> parse_key_values(std::string_view text, std::string_view source);

struct ScenarioConfig {
    noma::Mode mode = noma::Mode::CO;

    double earth_radius_km = 6378.0;
    double altitude_km = 20000.0;
    double elevation_deg = 18.0;  // pi / 10

    double carrier_hz = 10e9;
    double tx_gain_dbi = 32.0;
    double alpha1 = 2.0;
    double alpha2 = 2.2;
    double ris_user_distance_m = 10.0;

    double bandwidth_hz = 30e6;
    double spread_gain_db = 30.0;
    std::vector<double> tx_power_dbm;

    double k_r = 1.0;
    double k_g = 0.0;
    double k_n = 0.0;

    int ris_elements = 256;
    double ris_amplitude = 1.0;

    double alpha_m_sq = 0.6;
    double alpha_u_sq = 0.4;

    double rate_multicast = 0.0005;
    double rate_unicast = 0.001;

    std::int64_t mc_trials = 10000;
    std::uint64_t mc_seed = 1;
    std::int64_t mc_batch = 1024;

    std::string nav_scene;  // optional scene file, resolved against the config's directory
    std::int64_t nav_trials = 200;
    std::optional<double> nav_floor_m;  // default: code floor of the bandwidth

    double fixed_power_dbm = 46.0;

    geometry::OrbitGeometry orbit() const;
    geometry::RfParams rf() const;
    channel::RicianParams rician() const;
    channel::RisArray ris() const;
    noma::PowerSplit split() const;
    noma::RateTargets targets() const;
    montecarlo::McConfig mc() const;
    geometry::LinkBudget budget_dbm(double tx_power_dbm) const;
    noma::Scenario scenario_dbm(double tx_power_dbm) const;
    double nav_floor() const;

    /// Cross-field checks; throws ConfigError naming the violated invariant.
    void validate() const;
};

std::vector<double> default_tx_power_grid_dbm();

/// Default split of each mode: CO 0.6 / 0.4, NO 0.1 / 0.9 (multi-cast / uni-cast).
noma::PowerSplit default_split(noma::Mode mode);

ScenarioConfig parse_config(std::string_view text, std::string_view source = "<config>");
ScenarioConfig load_config(const std::filesystem::path& path);

/// Writes every key; parse_config(serialize_config(c)) reproduces c exactly.
std::string serialize_config(const ScenarioConfig& cfg);

/// Scene files: sat1/sat2/sat3/inac_sat/ris/user = "x y z" in meters, clock_bias_s = seconds.
navigation::NavScene parse_scene(std::string_view text, std::string_view source = "<scene>");
navigation::NavScene load_scene(const std::filesystem::path& path);
std::string serialize_scene(const navigation::NavScene& scene);

/// The scene named by nav.scene, or the built-in default scene.
navigation::NavScene scene_for(const ScenarioConfig& cfg, const std::filesystem::path& config_dir = {});

}  // namespace inac::config
