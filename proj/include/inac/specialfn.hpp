// specialfn.hpp
//
// Scalar special functions used by the closed-form link analysis:
// error function and its Maclaurin series, the Laguerre function
// L_{1/2}(x) = 1F1(-1/2, 1; x), and the folded-normal density/CDF of a
// squared Gaussian amplitude.

#pragma once

namespace inac::specialfn {

/// Truncation control for power series.
struct SeriesControl {
    int max_terms = 200;
    double tol = 1e-12;

    void validate() const;
};

inline constexpr SeriesControl kKummerDefaults{200, 1e-12};
inline constexpr SeriesControl kErfSeriesDefaults{60, 1e-12};

double erf(double z);

/// Truncated Maclaurin series of erf. Only defined for |z| < 1; throws
/// DomainError otherwise.
double erf_series(double z, const SeriesControl& ctrl = kErfSeriesDefaults);

/// 1F1(-1/2, 1; x).
///
/// Negative arguments (the Rician case) go through Kummer's transformation
/// e^x 1F1(3/2, 1; -x), whose terms are all positive, and switch to the
/// large-argument asymptotic expansion for x <= -50. Throws ConvergenceError
/// when the series does not reach `tol` within `max_terms`.
double kummer_1f1_half(double x, const SeriesControl& ctrl = kKummerDefaults);

/// Density of y = X^2 with X ~ N(mean, var), evaluated at x >= 0.
/// Returns +infinity at x == 0 (integrable x^{-1/2} singularity).
double folded_normal_pdf(double x, double mean, double var);

/// P(X^2 <= x) with X ~ N(mean, var).
double folded_normal_cdf(double x, double mean, double var);

}  // namespace inac::specialfn
