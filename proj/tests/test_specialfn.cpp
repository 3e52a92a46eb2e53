// test_specialfn.cpp

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "inac/errors.hpp"
#include "inac/specialfn.hpp"

using namespace inac;
using specialfn::erf_series;
using specialfn::folded_normal_cdf;
using specialfn::folded_normal_pdf;
using specialfn::kummer_1f1_half;
using boost::math::quadrature::gauss_kronrod;

namespace {

double erf_by_quadrature(double z) {
    auto f = [](double t) { return std::exp(-t * t); };
    return 2.0 / std::sqrt(std::numbers::pi) * gauss_kronrod<double, 61>::integrate(f, 0.0, z, 15, 1e-14);
}

// L_{1/2}(-K) via modified Bessel functions.
double laguerre_half_bessel(double k) {
    return std::exp(-k / 2.0) * ((1.0 + k) * std::cyl_bessel_i(0.0, k / 2.0) + k * std::cyl_bessel_i(1.0, k / 2.0));
}

}  // namespace

TEST_CASE("erf basics") {
    CHECK(specialfn::erf(0.0) == 0.0);
    for (double x : {0.1, 0.7, 1.3, 2.5, 4.0}) {
        CHECK(specialfn::erf(-x) == -specialfn::erf(x));
        CHECK(std::abs(specialfn::erf(x)) < 1.0);
    }
    CHECK(specialfn::erf(1.0) == doctest::Approx(0.8427008).epsilon(1e-7));
    for (double z : {0.2, 1.0, 1.7, 3.0}) {
        CHECK(specialfn::erf(z) == doctest::Approx(erf_by_quadrature(z)).epsilon(1e-12));
    }
}

TEST_CASE("erf is strictly increasing") {
    double prev = specialfn::erf(-5.0);
    for (double z = -4.9; z < 5.0; z += 0.1) {
        const double v = specialfn::erf(z);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("erf_series") {
    CHECK(erf_series(0.0) == 0.0);
    CHECK(std::abs(erf_series(0.5, {30, 1e-12}) - specialfn::erf(0.5)) < 1e-10);
    CHECK_THROWS_AS(erf_series(1.5), DomainError);
    CHECK_THROWS_AS(erf_series(-1.0), DomainError);

    SUBCASE("error shrinks with more terms") {
        for (double z : {0.3, 0.8, 0.99}) {
            double prev = 1.0;
            for (int n : {1, 2, 4, 8, 16}) {
                const double err = std::abs(erf_series(z, {n, 1e-16}) - specialfn::erf(z));
                CHECK(err <= prev);
                prev = err;
            }
            CHECK(prev < 1e-6);
        }
    }
}

TEST_CASE("SeriesControl validation") {
    CHECK_THROWS_AS(erf_series(0.5, {0, 1e-12}), DomainError);
    CHECK_THROWS_AS(erf_series(0.5, {10, 0.0}), DomainError);
    CHECK_THROWS_AS(kummer_1f1_half(-1.0, {10, 1.5}), DomainError);
}

TEST_CASE("kummer_1f1_half") {
    CHECK(kummer_1f1_half(0.0) == 1.0);
    CHECK(kummer_1f1_half(-1.0) == doctest::Approx(1.4465).epsilon(1e-3 / 1.4465));
    for (double k : {0.01, 0.5, 1.0, 4.0, 10.0, 30.0, 49.0, 50.0, 51.0, 100.0, 400.0}) {
        CAPTURE(k);
        CHECK(kummer_1f1_half(-k) == doctest::Approx(laguerre_half_bessel(k)).epsilon(1e-9));
    }
    for (double x : {-75.0, -20.0, -3.0, 0.5, 2.0, 6.0}) {
        CAPTURE(x);
        CHECK(kummer_1f1_half(x) == doctest::Approx(boost::math::hypergeometric_1F1(-0.5, 1.0, x)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(kummer_1f1_half(-10.0, {3, 1e-12}), ConvergenceError);
}

TEST_CASE("kummer_1f1_half(-K) increases with K") {
    double prev = kummer_1f1_half(0.0);
    for (double k = 0.25; k <= 200.0; k *= 1.5) {
        const double v = kummer_1f1_half(-k);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("Rician amplitude mean at K=4 against sampling") {
    const double k = 4.0;
    std::mt19937_64 gen(20240607);
    std::normal_distribution<double> n(0.0, std::sqrt(1.0 / (2.0 * (k + 1.0))));
    const double los = std::sqrt(k / (k + 1.0));
    const int draws = 10'000'000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) sum += std::hypot(los + n(gen), n(gen));
    const double empirical = sum / draws;
    const double predicted = std::sqrt(std::numbers::pi / (4.0 * (k + 1.0))) * kummer_1f1_half(-k);
    CHECK(predicted == doctest::Approx(empirical).epsilon(3e-4));
}

TEST_CASE("folded normal pdf") {
    CHECK(folded_normal_pdf(1.0, 0.0, 1.0) == doctest::Approx(std::exp(-0.5) / std::sqrt(2.0 * std::numbers::pi)));
    CHECK(std::isinf(folded_normal_pdf(0.0, 1.0, 1.0)));
    CHECK_THROWS_AS(folded_normal_pdf(-1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(folded_normal_pdf(1.0, 1.0, 0.0), DomainError);

    // x^{-1/2} growth near the origin
    const double a = folded_normal_pdf(1e-8, 1.0, 0.5);
    const double b = folded_normal_pdf(4e-8, 1.0, 0.5);
    CHECK(a / b == doctest::Approx(2.0).epsilon(1e-4));

    // normalization, integrating in t = sqrt(x) to remove the endpoint singularity
    for (auto [m, v] : {std::pair{0.0, 1.0}, {3.0, 0.5}, {80.33, 13.7}}) {
        auto f = [m = m, v = v](double t) { return 2.0 * t * folded_normal_pdf(t * t, m, v); };
        const double hi = m + 40.0 * std::sqrt(v);
        const double total = gauss_kronrod<double, 61>::integrate(f, 0.0, hi, 20, 1e-13);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("folded normal cdf") {
    CHECK(folded_normal_cdf(0.0, 2.0, 1.0) == 0.0);
    CHECK_THROWS_AS(folded_normal_cdf(-1e-3, 2.0, 1.0), DomainError);
    CHECK(folded_normal_cdf(100.0 * 100.0, 100.0, 1e-2) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(folded_normal_cdf(1e6, 3.0, 1.0) == doctest::Approx(1.0));

    double prev = 0.0;
    for (double x = 0.0; x < 40.0; x += 0.37) {
        const double c = folded_normal_cdf(x, 3.0, 0.8);
        CHECK(c >= prev);
        prev = c;
    }

    // the cdf is the integral of the pdf on every [0, X]
    for (auto [m, v] : {std::pair{0.0, 1.0}, {3.0, 0.5}, {1.2, 2.0}}) {
        auto f = [m = m, v = v](double t) { return 2.0 * t * folded_normal_pdf(t * t, m, v); };
        for (double x : {0.01, 0.5, 2.0, 9.0, 25.0}) {
            const double integral = gauss_kronrod<double, 61>::integrate(f, 0.0, std::sqrt(x), 20, 1e-14);
            CHECK(std::abs(folded_normal_cdf(x, m, v) - integral) < 1e-8);
        }
    }

    // the lower tail stays accurate where the difference of erfs would cancel
    const double tail = folded_normal_cdf(36.0, 20.0, 1.0);
    const double expected = 0.5 * (std::erfc(14.0 / std::sqrt(2.0)) - std::erfc(26.0 / std::sqrt(2.0)));
    CHECK(tail > 0.0);
    CHECK(tail == doctest::Approx(expected).epsilon(1e-10));
}
