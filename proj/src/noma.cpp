// noma.cpp

#include "inac/noma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "inac/errors.hpp"

namespace inac::noma {

std::string_view to_string(Mode m) { return m == Mode::CO ? "CO" : "NO"; }

std::string_view to_string(Signal s) { return s == Signal::multicast ? "multicast" : "unicast"; }

std::string_view to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::asymptotic: return "asymptotic";
        case Method::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

void PowerSplit::validate() const {
    if (!(alpha_m_sq > 0.0 && alpha_m_sq < 1.0) || !(alpha_u_sq > 0.0 && alpha_u_sq < 1.0)) {
        throw DomainError("PowerSplit: both shares must lie in (0, 1)");
    }
    if (std::abs(alpha_m_sq + alpha_u_sq - 1.0) > 1e-9) {
        throw DomainError("PowerSplit: alpha_m_sq + alpha_u_sq must equal 1");
    }
}

RateTargets RateTargets::from_rates(double r_m, double r_u) {
    if (!(r_m > 0.0) || !(r_u > 0.0)) throw DomainError("RateTargets: rates must be positive");
    return {r_m, r_u, std::exp2(r_m) - 1.0, std::exp2(r_u) - 1.0};
}

bool Scenario::feasible() const {
    if (mode == Mode::CO) {
        return split.alpha_m_sq - split.alpha_u_sq * targets.eps_m > 0.0;
    }
    return split.alpha_u_sq - split.alpha_m_sq * targets.eps_u > 0.0;
}

Scenario Scenario::with_tx_power(double watts) const {
    Scenario out = *this;
    out.budget = budget.with_tx_power(watts);
    return out;
}

Scenario Scenario::with_elements(int num_elements) const {
    channel::RisArray r = ris;
    r.num_elements = num_elements;
    return make_scenario(mode, split, targets, budget, r, rician);
}

Scenario Scenario::with_rician(const channel::RicianParams& rp) const {
    return make_scenario(mode, split, targets, budget, ris, rp);
}

Scenario make_scenario(Mode mode, const PowerSplit& split, const RateTargets& targets,
                       const geometry::LinkBudget& budget, const channel::RisArray& ris,
                       const channel::RicianParams& rician) {
    split.validate();
    Scenario sc;
    sc.mode = mode;
    sc.split = split;
    sc.targets = targets;
    sc.budget = budget;
    sc.ris = ris;
    sc.rician = rician;
    sc.moments = channel::cascaded_moments(ris, rician);
    return sc;
}

double sinr_co_multicast(double gain, const Scenario& sc) {
    const double s = gain * sc.budget.gamma;
    return sc.split.alpha_m_sq * s / (sc.split.alpha_u_sq * s + sc.budget.noise_power);
}

double sinr_co_unicast(double gain, const Scenario& sc) {
    return sc.split.alpha_u_sq * gain * sc.budget.gamma / sc.budget.noise_power;
}

double sinr_no_unicast(double gain, const Scenario& sc) {
    const double s = gain * sc.budget.gamma;
    return sc.split.alpha_u_sq * s / (sc.split.alpha_m_sq * s + sc.budget.noise_power);
}

double sinr_no_multicast(double gain, const Scenario& sc) {
    return sc.split.alpha_m_sq * gain * sc.budget.gamma / sc.budget.noise_power;
}

double sinr(double gain, const Scenario& sc, Signal signal) {
    if (sc.mode == Mode::CO) {
        return signal == Signal::multicast ? sinr_co_multicast(gain, sc) : sinr_co_unicast(gain, sc);
    }
    return signal == Signal::unicast ? sinr_no_unicast(gain, sc) : sinr_no_multicast(gain, sc);
}

std::optional<double> outage_threshold(const Scenario& sc, Signal signal) {
    if (!sc.feasible()) {
        return std::nullopt;
    }
    const double rho2 = sc.budget.noise_power;
    const double gamma = sc.budget.gamma;
    const auto& a = sc.split;
    const auto& t = sc.targets;
    if (sc.mode == Mode::CO) {
        // the interfered (first-decoded) stream gates both signals
        const double first = t.eps_m * rho2 / ((a.alpha_m_sq - a.alpha_u_sq * t.eps_m) * gamma);
        if (signal == Signal::multicast) return first;
        return std::max(first, t.eps_u * rho2 / (a.alpha_u_sq * gamma));
    }
    const double first = t.eps_u * rho2 / ((a.alpha_u_sq - a.alpha_m_sq * t.eps_u) * gamma);
    if (signal == Signal::unicast) return first;
    return std::max(t.eps_m * rho2 / (a.alpha_m_sq * gamma), first);
}

OutageResult outage_closed_form(const Scenario& sc, Signal signal, bool strict) {
    const auto omega = outage_threshold(sc, signal);
    if (!omega) {
        if (strict) {
            throw InfeasibleError(std::string("outage_closed_form: power split infeasible for ") +
                                  std::string(to_string(sc.mode)) + " SIC order");
        }
        return {1.0, Method::closed_form, 0.0, true};
    }
    return {channel::effective_gain_cdf(*omega, sc.moments), Method::closed_form, 0.0, false};
}

double asymptotic_region_argument(const Scenario& sc, Signal signal) {
    const auto omega = outage_threshold(sc, signal);
    if (!omega) {
        throw InfeasibleError("asymptotic_region_argument: power split infeasible");
    }
    return (sc.moments.m3 + std::sqrt(*omega)) / std::sqrt(2.0 * sc.moments.v3);
}

OutageResult outage_asymptotic(const Scenario& sc, Signal signal, const specialfn::SeriesControl& ctrl) {
    ctrl.validate();
    const auto omega = outage_threshold(sc, signal);
    if (!omega) {
        return {1.0, Method::asymptotic, 0.0, true};
    }
    const double scale = std::sqrt(2.0 * sc.moments.v3);
    const double a = sc.moments.m3 / scale;
    const double s = std::sqrt(*omega) / scale;
    if (!(a + s < 1.0)) {
        throw RegionError("outage_asymptotic: expansion argument " + std::to_string(a + s) +
                          " >= 1, asymptotic result does not exist");
    }
    if (s == 0.0) {
        return {0.0, Method::asymptotic, 0.0, false};
    }
    // sum_n (-1)^n / (n! (2n+1)) * sum_{k odd} C(2n+1, k) a^{2n+1-k} s^k
    const double prefactor = 2.0 / std::sqrt(std::numbers::pi);
    double sum = 0.0;
    double inv_factorial = 1.0;
    for (int n = 0; n < ctrl.max_terms; ++n) {
        if (n > 0) inv_factorial /= n;
        const int order = 2 * n + 1;
        double binomial = 1.0;  // C(order, k)
        double odd_sum = 0.0;
        for (int k = 1; k <= order; ++k) {
            binomial *= static_cast<double>(order - k + 1) / k;
            if (k % 2 == 1) odd_sum += binomial * std::pow(a, order - k) * std::pow(s, k);
        }
        const double term = (n % 2 == 0 ? 1.0 : -1.0) * inv_factorial / order * odd_sum;
        sum += term;
        if (n > 0 && std::abs(term) <= ctrl.tol * std::abs(sum)) {
            const double value = std::clamp(prefactor * sum, 0.0, 1.0);
            return {value, Method::asymptotic, 0.0, false};
        }
    }
    throw ConvergenceError("outage_asymptotic: series did not converge within max_terms");
}

double capacity_hardened(const Scenario& sc, Signal signal) {
    const auto& a = sc.split;
    const double snr = channel::hardened_gain(sc.moments) * sc.budget.gamma / sc.budget.noise_power;
    if (sc.mode == Mode::CO) {
        return signal == Signal::multicast ? std::log2(1.0 + a.alpha_m_sq / a.alpha_u_sq)
                                           : std::log2(1.0 + a.alpha_u_sq * snr);
    }
    return signal == Signal::unicast ? std::log2(1.0 + a.alpha_u_sq / a.alpha_m_sq)
                                     : std::log2(1.0 + a.alpha_m_sq * snr);
}

double capacity_tdma_hardened(const Scenario& sc) {
    const double snr = channel::hardened_gain(sc.moments) * sc.budget.gamma / sc.budget.noise_power;
    return 0.5 * std::log2(1.0 + snr);
}

DiversityEstimate diversity_order_estimate(const Scenario& sc, Signal signal, std::span<const double> snr_grid) {
    if (snr_grid.size() < 3) {
        throw DomainError("diversity_order_estimate: degenerate grid (fewer than 3 points)");
    }
    const auto [lo, hi] = std::minmax_element(snr_grid.begin(), snr_grid.end());
    if (!(*lo > 0.0) || *hi / *lo < 100.0) {
        throw DomainError("diversity_order_estimate: degenerate grid (must span two decades of p/sigma^2)");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (double t : snr_grid) {
        const double op = outage_closed_form(sc.with_tx_power(t * sc.budget.noise_power), signal).value;
        if (op > 1e-6 && op < 0.5) {
            xs.push_back(std::log(t));
            ys.push_back(-std::log(op));
        }
    }
    if (xs.size() < 3) {
        throw DomainError("diversity_order_estimate: degenerate grid (fewer than 3 points with OP in (1e-6, 0.5))");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (!(sxx > 0.0)) {
        throw DomainError("diversity_order_estimate: degenerate grid (no spread in the fit band)");
    }
    return {sxy / sxx, sc.moments.m3, static_cast<int>(xs.size())};
}

}  // namespace inac::noma
