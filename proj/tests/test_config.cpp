// test_config.cpp
//
// Scenario and scene file parsing, validation and round trips.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "inac/config.hpp"
#include "inac/errors.hpp"

using namespace inac;
using namespace inac::config;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse_config(text, "case.cfg");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("empty text gives the defaults") {
    const auto c = parse_config("");
    CHECK(c.mode == noma::Mode::CO);
    CHECK(c.bandwidth_hz == 30e6);
    CHECK(c.ris_elements == 256);
    CHECK(c.alpha_m_sq == 0.6);
    CHECK(c.alpha_u_sq == 0.4);
    CHECK(c.tx_power_dbm == default_tx_power_grid_dbm());
    CHECK(c.tx_power_dbm.front() == 10.0);
    CHECK(c.tx_power_dbm.back() == 100.0);
    CHECK(c.nav_floor() == doctest::Approx(navigation::code_floor(30e6)));
}

TEST_CASE("accessors convert units") {
    const auto c = parse_config("orbit.altitude_km = 1000\norbit.elevation_deg = 90\nlink.spread_gain_db = 20\n");
    CHECK(c.orbit().altitude == 1000e3);
    CHECK(c.orbit().elevation == doctest::Approx(M_PI / 2.0));
    const auto b = c.budget_dbm(30.0);
    CHECK(b.tx_power == doctest::Approx(1.0));
    CHECK(b.spread_gain == doctest::Approx(100.0));
    CHECK(b.noise_power == doctest::Approx(1e-3 * std::pow(10.0, -17.4) * 30e6).epsilon(1e-12));
}

TEST_CASE("comments, blanks and lists") {
    const auto c = parse_config(
        "# header\n"
        "\n"
        "mode = NO   # trailing\n"
        "link.tx_power_dbm = 30, 35 ,40\n"
        "ris.elements=64\n");
    CHECK(c.mode == noma::Mode::NO);
    CHECK(c.tx_power_dbm == std::vector<double>{30.0, 35.0, 40.0});
    CHECK(c.ris_elements == 64);
}

TEST_CASE("mode picks its default split") {
    const auto no = parse_config("mode = NO\n");
    CHECK(no.alpha_m_sq == 0.1);
    CHECK(no.alpha_u_sq == 0.9);
    const auto one = parse_config("mode = NO\npower.alpha_u_sq = 0.8\n");
    CHECK(one.alpha_m_sq == doctest::Approx(0.2));
    CHECK(default_split(noma::Mode::CO).alpha_m_sq == 0.6);
}

TEST_CASE("diagnostics name the line and key") {
    CHECK(error_of("mode = CO\nbogus.key = 1\n").find("case.cfg:2: bogus.key") != std::string::npos);
    CHECK(error_of("ris.elements = many\n").find("case.cfg:1: ris.elements") != std::string::npos);
    CHECK(error_of("just words\n").find("case.cfg:1") != std::string::npos);
    CHECK(error_of("mode = CO\nmode = NO\n").find("duplicate") != std::string::npos);
    CHECK_FALSE(error_of("mode = XO\n").empty());
    CHECK_FALSE(error_of("link.bandwidth_hz = nan\n").empty());
}

TEST_CASE("validation rejects inconsistent scenarios") {
    CHECK_THROWS_AS(parse_config("power.alpha_m_sq = 0.5\npower.alpha_u_sq = 0.6\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("link.bandwidth_hz = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("orbit.elevation_deg = 95\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("ris.elements = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mc.trials = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("link.tx_power_dbm = \n"), ConfigError);
    // CO needs alpha_M^2 > alpha_U^2 eps_M, NO needs alpha_U^2 > alpha_M^2 eps_U
    CHECK_THROWS_AS(parse_config("rate.multicast_bps_hz = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode = NO\nrate.unicast_bps_hz = 4\n"), ConfigError);
}

TEST_CASE("serialization round trips") {
    const auto c = parse_config(
        "mode = NO\n"
        "orbit.altitude_km = 8062.5\n"
        "rf.ris_user_distance_m = 0.1\n"
        "link.tx_power_dbm = 12.25, 46, 77.125\n"
        "channel.k_r = 3.3\n"
        "power.alpha_u_sq = 0.7\n"
        "mc.seed = 18446744073709551615\n"
        "nav.floor_m = 1.5\n");
    const auto text = serialize_config(c);
    const auto back = parse_config(text);
    CHECK(serialize_config(back) == text);
    CHECK(back.mode == noma::Mode::NO);
    CHECK(back.altitude_km == 8062.5);
    CHECK(back.ris_user_distance_m == 0.1);
    CHECK(back.tx_power_dbm == c.tx_power_dbm);
    CHECK(back.k_r == 3.3);
    CHECK(back.alpha_m_sq == c.alpha_m_sq);
    CHECK(back.mc_seed == 18446744073709551615ull);
    CHECK(back.nav_floor_m == 1.5);

    const auto d = parse_config("");
    CHECK(serialize_config(parse_config(serialize_config(d))) == serialize_config(d));
}

TEST_CASE("scene files") {
    const auto cfg = parse_config("");
    const auto s = scene_for(cfg);
    const auto text = serialize_scene(s);
    const auto back = parse_scene(text);
    for (int i = 0; i < 3; ++i) CHECK(back.sat_positions[i] == s.sat_positions[i]);
    CHECK(back.inac_sat_position == s.inac_sat_position);
    CHECK(back.ris_position == s.ris_position);
    CHECK(back.true_user == s.true_user);
    CHECK(back.clock_bias == s.clock_bias);

    CHECK_THROWS_AS(parse_scene("sat1 = 1 2 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_scene("sat1 = 1 2\n"), ConfigError);
    // all anchors on one point: singular design matrix
    CHECK_THROWS_AS(parse_scene("sat1 = 1 0 0\nsat2 = 1 0 0\nsat3 = 1 0 0\ninac_sat = 1 0 0\n"
                                "ris = 1 0 0\nuser = 0 0 0\nclock_bias_s = 0\n"),
                    ConfigError);

    const auto dir = std::filesystem::temp_directory_path() / "inac_test_config";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "scene.txt") << text;
    auto rel = cfg;
    rel.nav_scene = "scene.txt";
    CHECK(scene_for(rel, dir).true_user == s.true_user);
    rel.nav_scene = "missing.txt";
    CHECK_THROWS_AS(scene_for(rel, dir), ConfigError);
}

TEST_CASE("load_config reports missing files") {
    CHECK_THROWS_AS(load_config("/nonexistent/inac.cfg"), ConfigError);
}
