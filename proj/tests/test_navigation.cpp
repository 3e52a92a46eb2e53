// test_navigation.cpp

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "inac/errors.hpp"
#include "inac/navigation.hpp"
#include "scenes.hpp"

using namespace inac;
using namespace inac::navigation;

namespace {

constexpr double kC = geometry::kSpeedOfLight;

NavScene meo_scene() { return default_scene({6378e3, 20000e3, geometry::deg_to_rad(18.0)}, 10.0); }

PseudorangeSet noiseless(const NavScene& s) {
    auto rng = montecarlo::trial_stream(1, 0);
    return synthesize_pseudoranges(s, 0.0, rng);
}

}  // namespace

TEST_CASE("pseudorange synthesis") {
    auto s = meo_scene();
    s.clock_bias = 0.0;
    const auto pr = noiseless(s);
    for (int i = 0; i < 3; ++i) CHECK(pr.rho[i] == (s.sat_positions[i] - s.true_user).norm());
    const double leg = (s.inac_sat_position - s.ris_position).norm();
    CHECK(pr.rho[3] == doctest::Approx(leg + (s.ris_position - s.true_user).norm()).epsilon(1e-15));
    CHECK(s.geometry().ris_leg == leg);

    s.clock_bias = 2e-4;
    const auto biased = noiseless(s);
    for (int i = 0; i < 4; ++i) CHECK(biased.rho[i] - pr.rho[i] == doctest::Approx(kC * 2e-4).epsilon(1e-9));

    auto rng = montecarlo::trial_stream(3, 1);
    const auto noisy = synthesize_pseudoranges(s, {1.0, 2.0, 3.0, 4.0}, rng);
    CHECK(noisy.sigma[3] == 4.0);
}

TEST_CASE("residual cost at the truth is about 4 sigma^2") {
    const auto s = meo_scene();
    const double sigma = 3.0;
    double total = 0.0;
    const int n = 20000;
    for (int t = 0; t < n; ++t) {
        auto rng = montecarlo::trial_stream(8, t);
        total += residual_cost(synthesize_pseudoranges(s, sigma, rng), s.geometry(), s.true_state());
    }
    // chi-square with 4 degrees of freedom: mean 4 sigma^2, sd sqrt(8) sigma^2
    CHECK(total / n == doctest::Approx(4.0 * sigma * sigma).epsilon(4.0 * std::sqrt(8.0 / n) / 4.0));
}

TEST_CASE("design rows") {
    const Vec3 user(0.0, 0.0, 6378e3);
    const Vec3 above(0.0, 0.0, 6378e3 + 20000e3);
    const auto row = design_row(above, user);
    CHECK(row(0) == doctest::Approx(0.0));
    CHECK(row(1) == doctest::Approx(0.0));
    CHECK(std::abs(row(2)) == doctest::Approx(1.0));
    CHECK(row(3) == 1.0);
    CHECK_THROWS_AS(design_row(user, user), RankError);

    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = testing_scenes::random_scene(gen);
        const auto geom = s.geometry();
        const State x = s.true_state() + State(120.0, -40.0, 75.0, 10.0);
        const auto u = design_matrix(geom, x);
        for (int i = 0; i < 4; ++i) {
            CHECK(u.row(i).head<3>().norm() == doctest::Approx(1.0).epsilon(1e-14));
            for (int j = 0; j < 4; ++j) {
                // Richardson-extrapolated central difference; ranges are ~2e7 m
                // so the step must stay large against rounding
                const auto central = [&](double h) {
                    State xp = x, xm = x;
                    xp[j] += h;
                    xm[j] -= h;
                    return (predicted_ranges(geom, xp)[i] - predicted_ranges(geom, xm)[i]) / (2.0 * h);
                };
                const double fd = (4.0 * central(0.05) - central(0.1)) / 3.0;
                CHECK(std::abs(u(i, j) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST_CASE("noiseless solve from a cold start") {
    // Four ranges with a nearby RIS anchor admit two exact roots; a cold
    // start lands on one of them, so every fix must reproduce the ranges
    // and the one near the truth must be the truth.
    std::mt19937_64 gen(10);
    LsmControl ctrl;
    ctrl.loss = 1e-10;
    int exact = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = testing_scenes::random_scene(gen);
        const auto fix = lsm_solve(noiseless(s), s.geometry(), ctrl);
        CHECK(fix.converged);
        CHECK(fix.iterations_used <= ctrl.iters);
        CHECK(fix.final_cost < ctrl.loss);
        if ((fix.position() - s.true_user).norm() < 1e-3) {
            ++exact;
            CHECK(std::abs(fix.clock_bias() - s.clock_bias) < 1e-12);
        }
    }
    CHECK(exact > 0);
}

TEST_CASE("noiseless solve near the truth is exact") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> offset(0.0, 1.0);
    LsmControl ctrl;
    ctrl.loss = 1e-10;
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = testing_scenes::random_scene(gen);
        ctrl.x0 = s.true_state() + State(offset(gen), offset(gen), offset(gen), offset(gen));
        const auto fix = lsm_solve(noiseless(s), s.geometry(), ctrl);
        CHECK(fix.converged);
        CHECK(fix.iterations_used <= 10);
        CHECK((fix.position() - s.true_user).norm() < 1e-3);
        CHECK(std::abs(fix.clock_bias() - s.clock_bias) < 1e-12);
    }
}

TEST_CASE("warm start at the truth") {
    const auto s = meo_scene();
    LsmControl ctrl;
    ctrl.x0 = s.true_state();
    const auto fix = lsm_solve(noiseless(s), s.geometry(), ctrl);
    CHECK(fix.iterations_used == 1);
    CHECK(fix.converged);
    CHECK(fix.final_cost < 1e-12);
}

TEST_CASE("iteration budget") {
    const auto s = meo_scene();
    LsmControl ctrl;
    ctrl.iters = 1;
    const auto fix = lsm_solve(noiseless(s), s.geometry(), ctrl);
    CHECK(fix.iterations_used == 1);
    CHECK_FALSE(fix.converged);
    CHECK(fix.final_cost > ctrl.loss);
    ctrl.iters = 0;
    CHECK_THROWS_AS(lsm_solve(noiseless(s), s.geometry(), ctrl), DomainError);
    ctrl.iters = 5;
    ctrl.loss = 0.0;
    CHECK_THROWS_AS(lsm_solve(noiseless(s), s.geometry(), ctrl), DomainError);
}

TEST_CASE("uniform range offset goes into the clock") {
    std::mt19937_64 gen(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = testing_scenes::random_scene(gen);
        auto pr = noiseless(s);
        const auto base = lsm_solve(pr, s.geometry());
        for (double& r : pr.rho) r += 250.0;
        const auto shifted = lsm_solve(pr, s.geometry());
        CHECK((shifted.position() - base.position()).norm() < 1e-6);
        CHECK(shifted.state[3] - base.state[3] == doctest::Approx(250.0).epsilon(1e-9));
    }
}

TEST_CASE("translation equivariance") {
    auto s = meo_scene();
    auto rng = montecarlo::trial_stream(2, 0);
    const auto pr = synthesize_pseudoranges(s, 1.0, rng);
    LsmControl ctrl;
    ctrl.loss = 1e-10;
    const auto fix = lsm_solve(pr, s.geometry(), ctrl);
    const Vec3 t(1.5e5, -3e4, 7e4);
    for (auto& p : s.sat_positions) p += t;
    s.inac_sat_position += t;
    s.ris_position += t;
    s.true_user += t;
    const auto moved = lsm_solve(pr, s.geometry(), ctrl);
    CHECK((moved.position() - (fix.position() + t)).norm() < 1e-4);
}

TEST_CASE("degenerate geometry") {
    NavScene s;
    s.true_user = Vec3(0.0, 0.0, 0.0);
    // every anchor on the x axis: only one direction is observable
    s.sat_positions = {Vec3(1e7, 0, 0), Vec3(2e7, 0, 0), Vec3(-1.5e7, 0, 0)};
    s.inac_sat_position = Vec3(3e7, 0, 0);
    s.ris_position = Vec3(10.0, 0, 0);
    CHECK_THROWS_AS(s.validate(), RankError);
    LsmControl ctrl;
    ctrl.x0 = State(1.0, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS(lsm_solve(noiseless(s), s.geometry(), ctrl), RankError);
}

TEST_CASE("RMSE follows covariance propagation in the linear regime") {
    const auto s = meo_scene();
    const double sigma = 0.01;
    const double g = gdop(s.geometry(), s.true_state());
    const double p = pdop(s.geometry(), s.true_state());
    double sq_state = 0.0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        auto rng = montecarlo::trial_stream(21, t);
        const auto fix = lsm_solve(synthesize_pseudoranges(s, sigma, rng), s.geometry());
        sq_state += (fix.state - s.true_state()).squaredNorm();
    }
    // the sample RMS of a sum of squares over 1000 draws is within ~10%
    CHECK(std::sqrt(sq_state / trials) == doctest::Approx(g * sigma).epsilon(0.1));
    CHECK(position_rmse(s, {sigma, sigma, sigma, sigma}, trials, 21) == doctest::Approx(p * sigma).epsilon(0.1));
    CHECK(p <= g);
}

TEST_CASE("range noise model") {
    CHECK(range_noise_from_snr(4.0, 30e6) == doctest::Approx(0.5 * range_noise_from_snr(1.0, 30e6)));
    CHECK(range_noise_from_snr(1.0, 30e6) == doctest::Approx(kC / (2.0 * 30e6 * std::sqrt(2.0))));
    CHECK_THROWS_AS(range_noise_from_snr(0.0, 30e6), DomainError);
    CHECK_THROWS_AS(range_noise_from_snr(-1.0, 30e6), DomainError);
    CHECK(code_floor(30e6) == doctest::Approx(4.99654).epsilon(1e-5));

    const double floor = code_floor(30e6);
    CHECK(pseudorange_sigma(1e12, 30e6, floor) == floor);
    CHECK(pseudorange_sigma(1e-4, 30e6, floor) == range_noise_from_snr(1e-4, 30e6));
    CHECK(std::isinf(pseudorange_sigma(0.0, 30e6, floor)));

    const auto s = meo_scene();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(std::isinf(position_rmse(s, {floor, floor, floor, inf}, 10, 1)));
}

TEST_CASE("RMSE does not grow as the RIS leg gets cleaner") {
    const auto s = meo_scene();
    double prev = std::numeric_limits<double>::infinity();
    for (double sigma4 : {500.0, 100.0, 30.0, 10.0, 5.0}) {
        const double r = position_rmse(s, {5.0, 5.0, 5.0, sigma4}, 300, 4);
        CHECK(r <= prev);
        prev = r;
    }
}

TEST_CASE("default scene") {
    const auto s = meo_scene();
    CHECK_NOTHROW(s.validate());
    CHECK((s.ris_position - s.true_user).norm() == doctest::Approx(10.0));
    CHECK_THROWS_AS(default_scene({6378e3, 20000e3, 0.3}, 0.0), DomainError);
}
