// channel.hpp
//
// Per-link Rician amplitude moments and the CLT statistics of the
// co-phased cascaded satellite-RIS-user gain |h|^2 = (sum_l beta |h_l g_l|)^2.

#pragma once

#include "inac/specialfn.hpp"

namespace inac::channel {

/// Rician K factors; K = 0 is pure NLoS (Rayleigh).
struct RicianParams {
    double k_r = 0.0;  // satellite-RIS
    double k_g = 0.0;  // RIS-user
    double k_n = 0.0;  // satellite-user (navigation links)

    void validate() const;
};

struct RisArray {
    int num_elements = 1;
    double amplitude = 1.0;  // beta, applied uniformly

    void validate() const;
};

struct AmplitudeMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Moments: (m1, v1) satellite-RIS, (m2, v2) RIS-user, and
/// (m3, v3) of the summed amplitude.
struct ChannelMoments {
    double m1 = 0.0, v1 = 0.0;
    double m2 = 0.0, v2 = 0.0;
    double m3 = 0.0, v3 = 0.0;
};

/// Mean and variance of a unit-power Rician amplitude.
AmplitudeMoments rician_amplitude_moments(double k,
                                          const specialfn::SeriesControl& ctrl = specialfn::kKummerDefaults);

ChannelMoments cascaded_moments(const RisArray& ris, const RicianParams& rp);

/// CDF of the effective power gain |h|^2 under the CLT approximation.
double effective_gain_cdf(double x, const ChannelMoments& cm);

/// Density counterpart of effective_gain_cdf.
double effective_gain_pdf(double x, const ChannelMoments& cm);

/// Deterministic large-L limit m3^2.
double hardened_gain(const ChannelMoments& cm);

}  // namespace inac::channel
