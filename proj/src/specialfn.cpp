// specialfn.cpp

#include "inac/specialfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "inac/errors.hpp"

namespace inac::specialfn {

namespace {

constexpr double kAsymptoticSwitch = 50.0;

// e^{-K} 1F1(3/2, 1; K) summed directly; every term is positive.
double kummer_transformed(double k, const SeriesControl& ctrl) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < ctrl.max_terms; ++n) {
        term *= (n + 1.5) * k / ((n + 1.0) * (n + 1.0));
        sum += term;
        if (term < ctrl.tol * sum && n + 1.5 > k) {
            return std::exp(-k) * sum;
        }
    }
    throw ConvergenceError("kummer_1f1_half: series did not converge for x = " + std::to_string(-k));
}

// Large-K expansion of 1F1(-1/2, 1; -K) = (2/sqrt(pi)) sqrt(K) sum ((-1/2)_s)^2 / (s! K^s).
double kummer_asymptotic(double k, const SeriesControl& ctrl) {
    double term = 1.0;
    double sum = 1.0;
    for (int s = 0; s < ctrl.max_terms; ++s) {
        const double next = term * (s - 0.5) * (s - 0.5) / ((s + 1.0) * k);
        if (std::abs(next) > std::abs(term)) {
            break;  // divergent tail reached before tolerance
        }
        term = next;
        sum += term;
        if (std::abs(term) < ctrl.tol * std::abs(sum)) {
            return 2.0 / std::sqrt(std::numbers::pi) * std::sqrt(k) * sum;
        }
    }
    throw ConvergenceError("kummer_1f1_half: asymptotic expansion did not reach tolerance for x = " +
                           std::to_string(-k));
}

}  // namespace

void SeriesControl::validate() const {
    if (max_terms < 1) {
        throw DomainError("SeriesControl: max_terms must be >= 1");
    }
    if (!(tol > 0.0 && tol < 1.0)) {
        throw DomainError("SeriesControl: tol must lie in (0, 1)");
    }
}

double erf(double z) { return std::erf(z); }

double erf_series(double z, const SeriesControl& ctrl) {
    ctrl.validate();
    if (!(std::abs(z) < 1.0)) {
        throw DomainError("erf_series: |z| must be < 1, got " + std::to_string(z));
    }
    // (-1)^n z^{2n+1} / (n! (2n+1)); power_term carries (-1)^n z^{2n+1} / n!.
    double power_term = z;
    double sum = z;
    const double z2 = z * z;
    for (int n = 1; n < ctrl.max_terms; ++n) {
        power_term *= -z2 / n;
        const double term = power_term / (2.0 * n + 1.0);
        sum += term;
        if (std::abs(term) <= ctrl.tol * std::abs(sum)) {
            break;
        }
    }
    return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

double kummer_1f1_half(double x, const SeriesControl& ctrl) {
    ctrl.validate();
    if (!std::isfinite(x)) {
        throw DomainError("kummer_1f1_half: non-finite argument");
    }
    if (x == 0.0) {
        return 1.0;
    }
    if (x < 0.0) {
        const double k = -x;
        return k >= kAsymptoticSwitch ? kummer_asymptotic(k, ctrl) : kummer_transformed(k, ctrl);
    }
    // x > 0: (-1/2)_n < 0 for n >= 1, so all terms past the first share a sign.
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < ctrl.max_terms; ++n) {
        term *= (n - 0.5) * x / ((n + 1.0) * (n + 1.0));
        sum += term;
        if (std::abs(term) < ctrl.tol * std::abs(sum) && n + 1.0 > x) {
            return sum;
        }
    }
    throw ConvergenceError("kummer_1f1_half: series did not converge for x = " + std::to_string(x));
}

double folded_normal_pdf(double x, double mean, double var) {
    if (!(var > 0.0)) {
        throw DomainError("folded_normal_pdf: variance must be positive");
    }
    if (x < 0.0) {
        throw DomainError("folded_normal_pdf: x must be >= 0");
    }
    if (x == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double r = std::sqrt(x);
    const double lo = (r + mean) * (r + mean) / (2.0 * var);
    const double hi = (r - mean) * (r - mean) / (2.0 * var);
    return (std::exp(-lo) + std::exp(-hi)) / (2.0 * std::sqrt(2.0 * std::numbers::pi * var * x));
}

double folded_normal_cdf(double x, double mean, double var) {
    if (!(var > 0.0)) {
        throw DomainError("folded_normal_cdf: variance must be positive");
    }
    if (x < 0.0) {
        throw DomainError("folded_normal_cdf: x must be >= 0");
    }
    const double r = std::sqrt(x);
    const double scale = std::sqrt(2.0 * var);
    const double upper = (r + mean) / scale;
    const double lower = (mean - r) / scale;
    // Both arguments large and positive in the outage tail: the erfc difference keeps precision.
    if (lower > 0.0) {
        return 0.5 * (std::erfc(lower) - std::erfc(upper));
    }
    return 0.5 * (std::erf(upper) - std::erf(lower));
}

}  // namespace inac::specialfn
