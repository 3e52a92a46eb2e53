// noma.hpp
//
// Two-signal NOMA downlink over the RIS-cascaded channel. The multi-cast
// (navigation) and uni-cast (communication) streams share one superposed
// transmission and are separated by SIC at the INAC user.
//
//   CO mode: multi-cast gets the larger share and is decoded first.
//   NO mode: uni-cast gets the larger share and is decoded first.

#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "inac/channel.hpp"
#include "inac/geometry.hpp"
#include "inac/specialfn.hpp"

namespace inac::noma {

enum class Mode { CO, NO };
enum class Signal { multicast, unicast };
enum class Method { closed_form, asymptotic, monte_carlo };

std::string_view to_string(Mode m);
std::string_view to_string(Signal s);
std::string_view to_string(Method m);

/// alpha_M^2 + alpha_U^2 = 1, both in (0, 1).
struct PowerSplit {
    double alpha_m_sq = 0.6;
    double alpha_u_sq = 0.4;

    void validate() const;
};

struct RateTargets {
    double r_m = 0.0005;  // bps/Hz
    double r_u = 0.001;
    double eps_m = 0.0;   // 2^r_m - 1
    double eps_u = 0.0;

    static RateTargets from_rates(double r_m, double r_u);
};

struct OutageResult {
    double value = 1.0;
    Method method = Method::closed_form;
    double half_width = 0.0;
    bool infeasible = false;  // power split cannot support the SIC order
};

struct Scenario {
    Mode mode = Mode::CO;
    PowerSplit split;
    RateTargets targets;
    geometry::LinkBudget budget;
    channel::RisArray ris;
    channel::RicianParams rician;
    channel::ChannelMoments moments;

    /// CO: alpha_M^2 - alpha_U^2 eps_M > 0. NO: alpha_U^2 - alpha_M^2 eps_U > 0.
    bool feasible() const;

    Scenario with_tx_power(double watts) const;
    Scenario with_elements(int num_elements) const;
    Scenario with_rician(const channel::RicianParams& rp) const;
};

/// Builds a scenario and derives its channel moments.
Scenario make_scenario(Mode mode, const PowerSplit& split, const RateTargets& targets,
                       const geometry::LinkBudget& budget, const channel::RisArray& ris,
                       const channel::RicianParams& rician);

double sinr_co_multicast(double gain, const Scenario& sc);
double sinr_co_unicast(double gain, const Scenario& sc);
double sinr_no_unicast(double gain, const Scenario& sc);
double sinr_no_multicast(double gain, const Scenario& sc);

/// SINR of `signal` under the scenario's own mode.
double sinr(double gain, const Scenario& sc, Signal signal);

/// Power-gain threshold below which `signal` is in outage, or nullopt when
/// the scenario is infeasible for its decoding order.
std::optional<double> outage_threshold(const Scenario& sc, Signal signal);

/// CLT gain CDF evaluated at the outage threshold. An infeasible split yields
/// value = 1 with `infeasible` set, or throws InfeasibleError when `strict`.
OutageResult outage_closed_form(const Scenario& sc, Signal signal, bool strict = false);

/// (m3 + sqrt(omega)) / sqrt(2 v3); the erf expansion needs this below 1.
double asymptotic_region_argument(const Scenario& sc, Signal signal);

/// Double-series (erf Maclaurin + binomial) outage approximation. Throws
/// RegionError outside the expansion's validity region.
OutageResult outage_asymptotic(const Scenario& sc, Signal signal,
                               const specialfn::SeriesControl& ctrl = specialfn::kErfSeriesDefaults);

/// Channel-hardening rate limit in bps/Hz.
double capacity_hardened(const Scenario& sc, Signal signal);

/// Orthogonal TDMA baseline: full power in half the time, with the hardened gain.
double capacity_tdma_hardened(const Scenario& sc);

struct DiversityEstimate {
    double slope = 0.0;          // least-squares d(-ln OP)/d(ln p/sigma^2)
    double m3_prediction = 0.0;  // the "~ m3" proxy, reported alongside
    int points_used = 0;
};

/// Fits the log-log outage slope over the grid points with OP in (1e-6, 0.5).
/// The grid (values of p / rho^2) must span at least two decades and put at
/// least three points in that band; otherwise DomainError.
DiversityEstimate diversity_order_estimate(const Scenario& sc, Signal signal, std::span<const double> snr_grid);

}  // namespace inac::noma
