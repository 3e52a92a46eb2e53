// montecarlo.hpp
//
// Sampling oracle for the analytic results. Every trial owns a counter-based
// random stream derived from (master_seed, trial index), so estimates are
// bit-identical regardless of batch size or thread count.

#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "inac/channel.hpp"
#include "inac/noma.hpp"

namespace inac::montecarlo {

struct McConfig {
    std::int64_t trials = 10000;
    std::uint64_t master_seed = 1;
    std::int64_t batch = 1024;  // trials per scheduling unit
    unsigned threads = 0;       // 0 = hardware concurrency

    void validate() const;
};

struct McEstimate {
    double mean = 0.0;
    double half_width = 0.0;  // 95%
    std::int64_t trials = 0;
};

/// SplitMix64 used as a counter-based generator: the state is a counter and
/// each output is a bijective mix of it.
class TrialRng {
public:
    using result_type = std::uint64_t;

    explicit TrialRng(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Independent stream for one trial; `stream` separates unrelated uses of the same trial index.
TrialRng trial_stream(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t stream = 0);

/// Unit-power Rician amplitude |sqrt(K/(K+1)) + sqrt(1/(K+1)) CN(0,1)|.
double sample_rician_amplitude(double k, TrialRng& rng);

/// One co-phased cascaded power gain (sum_l beta |h_l| |g_l|)^2.
double sample_cascaded_gain(const channel::RisArray& ris, const channel::RicianParams& rp, TrialRng& rng);

/// Per-trial gains in trial order.
std::vector<double> sample_cascaded_gains(const channel::RisArray& ris, const channel::RicianParams& rp,
                                          const McConfig& mc);

/// Outage event of one realization, following the SIC decoding order.
bool outage_event(double gain, const noma::Scenario& sc, noma::Signal signal);

McEstimate outage_from_gains(const noma::Scenario& sc, noma::Signal signal, std::span<const double> gains);
McEstimate capacity_from_gains(const noma::Scenario& sc, noma::Signal signal, std::span<const double> gains);
McEstimate tdma_capacity_from_gains(const noma::Scenario& sc, std::span<const double> gains);

/// Empirical outage frequency with a Wilson 95% half-width.
McEstimate mc_outage(const noma::Scenario& sc, noma::Signal signal, const McConfig& mc);

/// Mean of log2(1 + SINR) with a normal-approximation 95% half-width.
McEstimate mc_capacity(const noma::Scenario& sc, noma::Signal signal, const McConfig& mc);

/// Kolmogorov-Smirnov distance between sampled gains and the CLT CDF.
double ks_distance_from_gains(std::vector<double> gains, const channel::ChannelMoments& cm);
double ks_distance(const channel::RisArray& ris, const channel::RicianParams& rp, const McConfig& mc);

double wilson_half_width(std::int64_t successes, std::int64_t n);

}  // namespace inac::montecarlo
