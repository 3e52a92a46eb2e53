// geometry.cpp

#include "inac/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "inac/errors.hpp"

namespace inac::geometry {

namespace {

double wavelength_factor(double carrier_hz) {
    const double f = kSpeedOfLight / (4.0 * std::numbers::pi * carrier_hz);
    return f * f;
}

}  // namespace

void OrbitGeometry::validate() const {
    if (!(earth_radius > 0.0)) throw DomainError("OrbitGeometry: earth radius must be positive");
    if (!(altitude > 0.0)) throw DomainError("OrbitGeometry: altitude must be positive");
    if (!(elevation >= 0.0 && elevation <= std::numbers::pi / 2 + 1e-15)) {
        throw DomainError("OrbitGeometry: elevation must lie in [0, pi/2]");
    }
}

void RfParams::validate() const {
    if (!(carrier_hz > 0.0)) throw DomainError("RfParams: carrier frequency must be positive");
    if (!(tx_gain >= 1.0)) throw DomainError("RfParams: tx gain must be >= 1 (0 dBi)");
    if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) throw DomainError("RfParams: path-loss exponents must be positive");
    if (!(ris_user_distance > 0.0)) throw DomainError("RfParams: RIS-user distance must be positive");
}

LinkBudget LinkBudget::with_tx_power(double watts) const {
    if (!(watts > 0.0)) throw DomainError("LinkBudget: tx power must be positive");
    LinkBudget out = *this;
    out.gamma = gamma / tx_power * watts;
    out.tx_power = watts;
    return out;
}

double slant_range(const OrbitGeometry& geom) {
    geom.validate();
    const double re = geom.earth_radius;
    const double rm = geom.altitude;
    const double s = std::sin(geom.elevation);
    if (geom.elevation == std::numbers::pi / 2) {
        return rm;
    }
    return std::sqrt(re * re * s * s + rm * rm + 2.0 * re * rm) - re * s;
}

double large_scale_gain_satellite(double distance, const RfParams& rf) {
    rf.validate();
    if (!(distance > 0.0)) throw DomainError("large_scale_gain_satellite: distance must be positive");
    return rf.tx_gain * wavelength_factor(rf.carrier_hz) * std::pow(distance, -rf.alpha1);
}

double large_scale_gain_ris_user(const RfParams& rf) {
    rf.validate();
    return wavelength_factor(rf.carrier_hz) * std::pow(rf.ris_user_distance, -rf.alpha2);
}

double thermal_noise_power(double bandwidth_hz) {
    if (!(bandwidth_hz > 0.0)) throw DomainError("thermal_noise_power: bandwidth must be positive");
    const double dbm = -174.0 + 10.0 * std::log10(bandwidth_hz);
    return dbm_to_watts(dbm);
}

LinkBudget link_budget(const OrbitGeometry& geom, const RfParams& rf, double tx_power_w,
                       double spread_gain, double bandwidth_hz) {
    if (!(tx_power_w > 0.0)) throw DomainError("link_budget: tx power must be positive");
    if (!(spread_gain > 0.0)) throw DomainError("link_budget: spread gain must be positive");
    const double d = slant_range(geom);
    LinkBudget lb;
    lb.tx_power = tx_power_w;
    lb.spread_gain = spread_gain;
    lb.gamma = large_scale_gain_satellite(d, rf) * large_scale_gain_ris_user(rf) * tx_power_w * spread_gain;
    lb.noise_power = thermal_noise_power(bandwidth_hz);
    return lb;
}

double geocentric_angle(const OrbitGeometry& geom) {
    geom.validate();
    const double ratio = geom.earth_radius / (geom.earth_radius + geom.altitude);
    const double v = std::acos(ratio * std::cos(geom.elevation)) - geom.elevation;
    return v < 0.0 ? 0.0 : v;
}

double coverage_area(const OrbitGeometry& geom) {
    const double v = geocentric_angle(geom);
    return 2.0 * std::numbers::pi * geom.earth_radius * geom.earth_radius * (1.0 - std::cos(v));
}

std::int64_t min_satellites(const OrbitGeometry& geom) {
    const double v = geocentric_angle(geom);
    const double cap = 1.0 - std::cos(v);
    if (!(cap > 0.0)) {
        throw InfeasibleError("min_satellites: zero coverage area at elevation " + std::to_string(geom.elevation));
    }
    return static_cast<std::int64_t>(std::ceil(2.0 / cap));
}

}  // namespace inac::geometry
