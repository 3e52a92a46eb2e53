// geometry.hpp
//
// Orbital geometry, large-scale fading and constellation sizing. All
// quantities are SI (meters, Hz, watts, radians); dB conversions live in
// the helpers at the bottom.

#pragma once

#include <cstdint>

namespace inac::geometry {

inline constexpr double kSpeedOfLight = 299792458.0;

struct OrbitGeometry {
    double earth_radius = 6378e3;  // r_e [m]
    double altitude = 20000e3;     // r_m [m]
    double elevation = 0.0;        // [rad], 0 <= elevation <= pi/2

    void validate() const;
};

struct RfParams {
    double carrier_hz = 10e9;
    double tx_gain = 1.0;          // linear
    double alpha1 = 2.0;           // satellite-side path-loss exponent
    double alpha2 = 2.2;           // RIS-user path-loss exponent
    double ris_user_distance = 10.0;  // d_RU [m]

    void validate() const;
};

/// gamma = l(d) l(d_RU) p g_sp, and the thermal noise power rho^2.
struct LinkBudget {
    double gamma = 0.0;
    double noise_power = 0.0;  // [W]
    double tx_power = 0.0;     // [W]
    double spread_gain = 1.0;  // linear

    /// Same link with a different transmit power (gamma rescaled linearly).
    LinkBudget with_tx_power(double watts) const;
};

double slant_range(const OrbitGeometry& geom);

double large_scale_gain_satellite(double distance, const RfParams& rf);
double large_scale_gain_ris_user(const RfParams& rf);

/// Thermal noise floor of -174 dBm/Hz integrated over `bandwidth_hz`, in watts.
double thermal_noise_power(double bandwidth_hz);

LinkBudget link_budget(const OrbitGeometry& geom, const RfParams& rf, double tx_power_w,
                       double spread_gain, double bandwidth_hz);

double geocentric_angle(const OrbitGeometry& geom);
double coverage_area(const OrbitGeometry& geom);

/// Ideal non-overlapping cap division ceil(4 pi r_e^2 / A). Throws
/// InfeasibleError when the coverage area is zero.
std::int64_t min_satellites(const OrbitGeometry& geom);

inline double db_to_linear(double db);
inline double linear_to_db(double lin);
inline double dbm_to_watts(double dbm);
inline double watts_to_dbm(double watts);
inline double deg_to_rad(double deg);

}  // namespace inac::geometry

#include <cmath>
#include <numbers>

namespace inac::geometry {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }
inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace inac::geometry
