// channel.cpp

#include "inac/channel.hpp"

#include <cmath>
#include <numbers>

#include "inac/errors.hpp"

namespace inac::channel {

void RicianParams::validate() const {
    if (!(k_r >= 0.0) || !(k_g >= 0.0) || !(k_n >= 0.0)) {
        throw DomainError("RicianParams: K factors must be >= 0");
    }
}

void RisArray::validate() const {
    if (num_elements < 1) throw DomainError("RisArray: at least one element required");
    if (!(amplitude > 0.0 && amplitude <= 1.0)) throw DomainError("RisArray: amplitude must lie in (0, 1]");
}

AmplitudeMoments rician_amplitude_moments(double k, const specialfn::SeriesControl& ctrl) {
    if (!(k >= 0.0)) throw DomainError("rician_amplitude_moments: K must be >= 0");
    const double mean = std::sqrt(std::numbers::pi / (4.0 * (1.0 + k))) * specialfn::kummer_1f1_half(-k, ctrl);
    // unit power: E|h|^2 = 1
    return {mean, 1.0 - mean * mean};
}

ChannelMoments cascaded_moments(const RisArray& ris, const RicianParams& rp) {
    ris.validate();
    rp.validate();
    const auto sr = rician_amplitude_moments(rp.k_r);
    const auto ru = rician_amplitude_moments(rp.k_g);
    ChannelMoments cm;
    cm.m1 = sr.mean;
    cm.v1 = sr.variance;
    cm.m2 = ru.mean;
    cm.v2 = ru.variance;
    const double beta = ris.amplitude;
    const double n = ris.num_elements;
    cm.m3 = beta * n * cm.m1 * cm.m2;
    // amplitude enters the variance squared; identical to the beta = 1 form used throughout
    cm.v3 = beta * beta * n * (cm.m1 * cm.m1 * cm.v2 + cm.m2 * cm.m2 * cm.v1 + cm.v1 * cm.v2);
    return cm;
}

double effective_gain_cdf(double x, const ChannelMoments& cm) {
    return specialfn::folded_normal_cdf(x, cm.m3, cm.v3);
}

double effective_gain_pdf(double x, const ChannelMoments& cm) {
    return specialfn::folded_normal_pdf(x, cm.m3, cm.v3);
}

double hardened_gain(const ChannelMoments& cm) { return cm.m3 * cm.m3; }

}  // namespace inac::channel
