// config.cpp

#include "inac/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "inac/errors.hpp"

namespace inac::config {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::string_view source, const KeyValue& kv, std::string_view what) {
    throw ConfigError(fmt::format("{}:{}: {}: {}", source, kv.line, kv.key, what));
}

double parse_double(std::string_view source, const KeyValue& kv, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        fail(source, kv, fmt::format("expected a finite number, got '{}'", text));
    }
    return v;
}

template <typename Int>
Int parse_int(std::string_view source, const KeyValue& kv) {
    const auto text = trim(kv.value);
    Int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        fail(source, kv, fmt::format("expected an integer, got '{}'", text));
    }
    return v;
}

std::vector<double> parse_list(std::string_view source, const KeyValue& kv) {
    std::vector<double> out;
    std::string_view rest = kv.value;
    while (true) {
        const auto comma = rest.find(',');
        out.push_back(parse_double(source, kv, rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

navigation::Vec3 parse_vec3(std::string_view source, const KeyValue& kv) {
    std::istringstream in{std::string(kv.value)};
    std::string a, b, c, extra;
    if (!(in >> a >> b >> c) || (in >> extra)) {
        fail(source, kv, "expected three coordinates 'x y z'");
    }
    return {parse_double(source, kv, a), parse_double(source, kv, b), parse_double(source, kv, c)};
}

// Shortest text that parses back to the same double.
std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

std::vector<KeyValue> parse_key_values(std::string_view text, std::string_view source) {
    std::vector<KeyValue> out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        ++line_no;
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("{}:{}: expected 'key = value', got '{}'", source, line_no, line));
        }
        KeyValue kv{line_no, std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1)))};
        if (kv.key.empty()) throw ConfigError(fmt::format("{}:{}: empty key", source, line_no));
        for (const auto& prev : out) {
            if (prev.key == kv.key) fail(source, kv, fmt::format("duplicate key (first set on line {})", prev.line));
        }
        out.push_back(std::move(kv));
    }
    return out;
}

std::vector<double> default_tx_power_grid_dbm() {
    std::vector<double> grid;
    for (int i = 0; i <= 36; ++i) grid.push_back(10.0 + 2.5 * i);
    return grid;
}

noma::PowerSplit default_split(noma::Mode mode) {
    return mode == noma::Mode::CO ? noma::PowerSplit{0.6, 0.4} : noma::PowerSplit{0.1, 0.9};
}

geometry::OrbitGeometry ScenarioConfig::orbit() const {
    return {earth_radius_km * 1e3, altitude_km * 1e3, geometry::deg_to_rad(elevation_deg)};
}

geometry::RfParams ScenarioConfig::rf() const {
    return {carrier_hz, geometry::db_to_linear(tx_gain_dbi), alpha1, alpha2, ris_user_distance_m};
}

channel::RicianParams ScenarioConfig::rician() const { return {k_r, k_g, k_n}; }

channel::RisArray ScenarioConfig::ris() const { return {ris_elements, ris_amplitude}; }

noma::PowerSplit ScenarioConfig::split() const { return {alpha_m_sq, alpha_u_sq}; }

noma::RateTargets ScenarioConfig::targets() const {
    return noma::RateTargets::from_rates(rate_multicast, rate_unicast);
}

montecarlo::McConfig ScenarioConfig::mc() const { return {mc_trials, mc_seed, mc_batch, 0}; }

geometry::LinkBudget ScenarioConfig::budget_dbm(double tx_power_dbm_value) const {
    return geometry::link_budget(orbit(), rf(), geometry::dbm_to_watts(tx_power_dbm_value),
                                 geometry::db_to_linear(spread_gain_db), bandwidth_hz);
}

noma::Scenario ScenarioConfig::scenario_dbm(double tx_power_dbm_value) const {
    return noma::make_scenario(mode, split(), targets(), budget_dbm(tx_power_dbm_value), ris(), rician());
}

double ScenarioConfig::nav_floor() const {
    return nav_floor_m ? *nav_floor_m : navigation::code_floor(bandwidth_hz);
}

void ScenarioConfig::validate() const {
    auto require = [](bool ok, std::string_view what) {
        if (!ok) throw ConfigError(fmt::format("validation: {}", what));
    };
    require(earth_radius_km > 0.0, "orbit.earth_radius_km must be positive");
    require(altitude_km > 0.0, "orbit.altitude_km must be positive");
    require(elevation_deg >= 0.0 && elevation_deg <= 90.0, "orbit.elevation_deg must lie in [0, 90]");
    require(carrier_hz > 0.0, "rf.carrier_hz must be positive");
    require(tx_gain_dbi >= 0.0, "rf.tx_gain_dbi must be >= 0");
    require(alpha1 > 0.0 && alpha2 > 0.0, "rf.alpha1 and rf.alpha2 must be positive");
    require(ris_user_distance_m > 0.0, "rf.ris_user_distance_m must be positive");
    require(bandwidth_hz > 0.0, "link.bandwidth_hz must be positive");
    require(!tx_power_dbm.empty(), "link.tx_power_dbm must list at least one power");
    require(k_r >= 0.0 && k_g >= 0.0 && k_n >= 0.0, "channel K factors must be >= 0");
    require(ris_elements >= 1, "ris.elements must be >= 1");
    require(ris_amplitude > 0.0 && ris_amplitude <= 1.0, "ris.amplitude must lie in (0, 1]");
    require(alpha_m_sq > 0.0 && alpha_m_sq < 1.0 && alpha_u_sq > 0.0 && alpha_u_sq < 1.0,
            "power shares must lie in (0, 1)");
    require(std::abs(alpha_m_sq + alpha_u_sq - 1.0) <= 1e-9, "power.alpha_m_sq + power.alpha_u_sq must equal 1");
    require(rate_multicast > 0.0 && rate_unicast > 0.0, "target rates must be positive");
    const auto t = targets();
    if (mode == noma::Mode::CO) {
        require(alpha_m_sq - alpha_u_sq * t.eps_m > 0.0,
                "CO mode needs alpha_m_sq - alpha_u_sq * (2^R_M - 1) > 0 for SIC decoding");
    } else {
        require(alpha_u_sq - alpha_m_sq * t.eps_u > 0.0,
                "NO mode needs alpha_u_sq - alpha_m_sq * (2^R_U - 1) > 0 for SIC decoding");
    }
    require(mc_trials >= 1, "mc.trials must be >= 1");
    require(mc_batch >= 1, "mc.batch must be >= 1");
    require(nav_trials >= 1, "nav.trials must be >= 1");
    require(!nav_floor_m || *nav_floor_m >= 0.0, "nav.floor_m must be >= 0");
}

ScenarioConfig parse_config(std::string_view text, std::string_view source) {
    ScenarioConfig cfg;
    cfg.tx_power_dbm = default_tx_power_grid_dbm();
    bool split_m = false;
    bool split_u = false;

    using Setter = std::function<void(const KeyValue&)>;
    auto dbl = [&](double& field) -> Setter {
        return [&, src = source](const KeyValue& kv) { field = parse_double(src, kv, kv.value); };
    };
    const std::map<std::string, Setter, std::less<>> setters = {
        {"mode",
         [&](const KeyValue& kv) {
             if (kv.value == "CO" || kv.value == "co") cfg.mode = noma::Mode::CO;
             else if (kv.value == "NO" || kv.value == "no") cfg.mode = noma::Mode::NO;
             else fail(source, kv, "expected CO or NO");
         }},
        {"orbit.earth_radius_km", dbl(cfg.earth_radius_km)},
        {"orbit.altitude_km", dbl(cfg.altitude_km)},
        {"orbit.elevation_deg", dbl(cfg.elevation_deg)},
        {"rf.carrier_hz", dbl(cfg.carrier_hz)},
        {"rf.tx_gain_dbi", dbl(cfg.tx_gain_dbi)},
        {"rf.alpha1", dbl(cfg.alpha1)},
        {"rf.alpha2", dbl(cfg.alpha2)},
        {"rf.ris_user_distance_m", dbl(cfg.ris_user_distance_m)},
        {"link.bandwidth_hz", dbl(cfg.bandwidth_hz)},
        {"link.spread_gain_db", dbl(cfg.spread_gain_db)},
        {"link.tx_power_dbm", [&](const KeyValue& kv) { cfg.tx_power_dbm = parse_list(source, kv); }},
        {"channel.k_r", dbl(cfg.k_r)},
        {"channel.k_g", dbl(cfg.k_g)},
        {"channel.k_n", dbl(cfg.k_n)},
        {"ris.elements", [&](const KeyValue& kv) { cfg.ris_elements = parse_int<int>(source, kv); }},
        {"ris.amplitude", dbl(cfg.ris_amplitude)},
        {"power.alpha_m_sq",
         [&](const KeyValue& kv) {
             cfg.alpha_m_sq = parse_double(source, kv, kv.value);
             split_m = true;
         }},
        {"power.alpha_u_sq",
         [&](const KeyValue& kv) {
             cfg.alpha_u_sq = parse_double(source, kv, kv.value);
             split_u = true;
         }},
        {"rate.multicast_bps_hz", dbl(cfg.rate_multicast)},
        {"rate.unicast_bps_hz", dbl(cfg.rate_unicast)},
        {"mc.trials", [&](const KeyValue& kv) { cfg.mc_trials = parse_int<std::int64_t>(source, kv); }},
        {"mc.seed", [&](const KeyValue& kv) { cfg.mc_seed = parse_int<std::uint64_t>(source, kv); }},
        {"mc.batch", [&](const KeyValue& kv) { cfg.mc_batch = parse_int<std::int64_t>(source, kv); }},
        {"nav.scene", [&](const KeyValue& kv) { cfg.nav_scene = kv.value; }},
        {"nav.trials", [&](const KeyValue& kv) { cfg.nav_trials = parse_int<std::int64_t>(source, kv); }},
        {"nav.floor_m",
         [&](const KeyValue& kv) {
             if (kv.value == "auto") cfg.nav_floor_m.reset();
             else cfg.nav_floor_m = parse_double(source, kv, kv.value);
         }},
        {"sweep.fixed_power_dbm", dbl(cfg.fixed_power_dbm)},
    };

    for (const auto& kv : parse_key_values(text, source)) {
        const auto it = setters.find(kv.key);
        if (it == setters.end()) fail(source, kv, "unknown key");
        it->second(kv);
    }
    // one share given: the other is its complement; none given: the mode's default
    if (split_m && !split_u) cfg.alpha_u_sq = 1.0 - cfg.alpha_m_sq;
    if (split_u && !split_m) cfg.alpha_m_sq = 1.0 - cfg.alpha_u_sq;
    if (!split_m && !split_u) {
        const auto d = default_split(cfg.mode);
        cfg.alpha_m_sq = d.alpha_m_sq;
        cfg.alpha_u_sq = d.alpha_u_sq;
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

std::string serialize_config(const ScenarioConfig& c) {
    std::string out;
    auto put = [&](std::string_view key, const std::string& value) { out += fmt::format("{} = {}\n", key, value); };
    put("mode", std::string(noma::to_string(c.mode)));
    put("orbit.earth_radius_km", num(c.earth_radius_km));
    put("orbit.altitude_km", num(c.altitude_km));
    put("orbit.elevation_deg", num(c.elevation_deg));
    put("rf.carrier_hz", num(c.carrier_hz));
    put("rf.tx_gain_dbi", num(c.tx_gain_dbi));
    put("rf.alpha1", num(c.alpha1));
    put("rf.alpha2", num(c.alpha2));
    put("rf.ris_user_distance_m", num(c.ris_user_distance_m));
    put("link.bandwidth_hz", num(c.bandwidth_hz));
    put("link.spread_gain_db", num(c.spread_gain_db));
    std::string grid;
    for (std::size_t i = 0; i < c.tx_power_dbm.size(); ++i) grid += (i ? ", " : "") + num(c.tx_power_dbm[i]);
    put("link.tx_power_dbm", grid);
    put("channel.k_r", num(c.k_r));
    put("channel.k_g", num(c.k_g));
    put("channel.k_n", num(c.k_n));
    put("ris.elements", std::to_string(c.ris_elements));
    put("ris.amplitude", num(c.ris_amplitude));
    put("power.alpha_m_sq", num(c.alpha_m_sq));
    put("power.alpha_u_sq", num(c.alpha_u_sq));
    put("rate.multicast_bps_hz", num(c.rate_multicast));
    put("rate.unicast_bps_hz", num(c.rate_unicast));
    put("mc.trials", std::to_string(c.mc_trials));
    put("mc.seed", std::to_string(c.mc_seed));
    put("mc.batch", std::to_string(c.mc_batch));
    if (!c.nav_scene.empty()) put("nav.scene", c.nav_scene);
    put("nav.trials", std::to_string(c.nav_trials));
    put("nav.floor_m", c.nav_floor_m ? num(*c.nav_floor_m) : std::string("auto"));
    put("sweep.fixed_power_dbm", num(c.fixed_power_dbm));
    return out;
}

navigation::NavScene parse_scene(std::string_view text, std::string_view source) {
    navigation::NavScene scene;
    std::map<std::string, bool, std::less<>> seen;
    for (const auto& kv : parse_key_values(text, source)) {
        if (kv.key == "sat1") scene.sat_positions[0] = parse_vec3(source, kv);
        else if (kv.key == "sat2") scene.sat_positions[1] = parse_vec3(source, kv);
        else if (kv.key == "sat3") scene.sat_positions[2] = parse_vec3(source, kv);
        else if (kv.key == "inac_sat") scene.inac_sat_position = parse_vec3(source, kv);
        else if (kv.key == "ris") scene.ris_position = parse_vec3(source, kv);
        else if (kv.key == "user") scene.true_user = parse_vec3(source, kv);
        else if (kv.key == "clock_bias_s") scene.clock_bias = parse_double(source, kv, kv.value);
        else fail(source, kv, "unknown scene key");
        seen[kv.key] = true;
    }
    for (const char* key : {"sat1", "sat2", "sat3", "inac_sat", "ris", "user"}) {
        if (!seen.count(key)) throw ConfigError(fmt::format("{}: missing scene key '{}'", source, key));
    }
    try {
        scene.validate();
    } catch (const RankError&) {
        throw ConfigError(fmt::format("{}: scene geometry is degenerate at the true user position", source));
    }
    return scene;
}

navigation::NavScene load_scene(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open scene file '{}'", path.string()));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str(), path.string());
}

std::string serialize_scene(const navigation::NavScene& s) {
    auto v3 = [](const navigation::Vec3& v) { return fmt::format("{} {} {}", v.x(), v.y(), v.z()); };
    std::string out;
    out += fmt::format("sat1 = {}\n", v3(s.sat_positions[0]));
    out += fmt::format("sat2 = {}\n", v3(s.sat_positions[1]));
    out += fmt::format("sat3 = {}\n", v3(s.sat_positions[2]));
    out += fmt::format("inac_sat = {}\n", v3(s.inac_sat_position));
    out += fmt::format("ris = {}\n", v3(s.ris_position));
    out += fmt::format("user = {}\n", v3(s.true_user));
    out += fmt::format("clock_bias_s = {}\n", s.clock_bias);
    return out;
}

navigation::NavScene scene_for(const ScenarioConfig& cfg, const std::filesystem::path& config_dir) {
    if (cfg.nav_scene.empty()) return navigation::default_scene(cfg.orbit(), cfg.ris_user_distance_m);
    std::filesystem::path p(cfg.nav_scene);
    if (p.is_relative() && !config_dir.empty()) p = config_dir / p;
    return load_scene(p);
}

}  // namespace inac::config
