// montecarlo.cpp

#include "inac/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "inac/errors.hpp"

namespace inac::montecarlo {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Runs body(begin, end) over [0, trials) in fixed-size chunks on a small pool.
void for_each_batch(std::int64_t trials, std::int64_t batch, unsigned threads,
                    const std::function<void(std::int64_t, std::int64_t)>& body) {
    const std::int64_t chunks = (trials + batch - 1) / batch;
    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, chunks));
    std::atomic<std::int64_t> next{0};
    auto run = [&] {
        for (std::int64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
            body(c * batch, std::min(trials, (c + 1) * batch));
        }
    };
    if (workers <= 1) {
        run();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(run);
}

McEstimate mean_estimate(std::span<const double> values) {
    const auto n = static_cast<std::int64_t>(values.size());
    if (n == 0) return {};
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
    return {mean, kZ95 * sd / std::sqrt(static_cast<double>(n)), n};
}

}  // namespace

void McConfig::validate() const {
    if (trials < 1) throw DomainError("McConfig: trials must be >= 1");
    if (batch < 1) throw DomainError("McConfig: batch must be >= 1");
}

TrialRng trial_stream(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t stream) {
    return TrialRng(mix64(mix64(master_seed) ^ (trial * 0x9E3779B97F4A7C15ULL + mix64(stream + 1))));
}

double sample_rician_amplitude(double k, TrialRng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double los = std::sqrt(k / (k + 1.0));
    const double s = std::sqrt(0.5 / (k + 1.0));
    const double re = los + s * normal(rng);
    const double im = s * normal(rng);
    return std::hypot(re, im);
}

double sample_cascaded_gain(const channel::RisArray& ris, const channel::RicianParams& rp, TrialRng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double los_h = std::sqrt(rp.k_r / (rp.k_r + 1.0));
    const double s_h = std::sqrt(0.5 / (rp.k_r + 1.0));
    const double los_g = std::sqrt(rp.k_g / (rp.k_g + 1.0));
    const double s_g = std::sqrt(0.5 / (rp.k_g + 1.0));
    double amplitude = 0.0;
    for (int l = 0; l < ris.num_elements; ++l) {
        const double hr = los_h + s_h * normal(rng);
        const double hi = s_h * normal(rng);
        const double gr = los_g + s_g * normal(rng);
        const double gi = s_g * normal(rng);
        // co-phasing aligns every reflected path, leaving the magnitude product
        amplitude += std::sqrt((hr * hr + hi * hi) * (gr * gr + gi * gi));
    }
    amplitude *= ris.amplitude;
    return amplitude * amplitude;
}

std::vector<double> sample_cascaded_gains(const channel::RisArray& ris, const channel::RicianParams& rp,
                                          const McConfig& mc) {
    mc.validate();
    ris.validate();
    rp.validate();
    std::vector<double> gains(static_cast<std::size_t>(mc.trials));
    for_each_batch(mc.trials, mc.batch, mc.threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t t = begin; t < end; ++t) {
            auto rng = trial_stream(mc.master_seed, static_cast<std::uint64_t>(t));
            gains[static_cast<std::size_t>(t)] = sample_cascaded_gain(ris, rp, rng);
        }
    });
    return gains;
}

bool outage_event(double gain, const noma::Scenario& sc, noma::Signal signal) {
    using noma::Mode;
    using noma::Signal;
    const double rm = sc.targets.r_m;
    const double ru = sc.targets.r_u;
    if (sc.mode == Mode::CO) {
        const bool first_fails = std::log2(1.0 + noma::sinr_co_multicast(gain, sc)) < rm;
        if (signal == Signal::multicast || first_fails) return first_fails;
        return std::log2(1.0 + noma::sinr_co_unicast(gain, sc)) < ru;
    }
    const bool first_fails = std::log2(1.0 + noma::sinr_no_unicast(gain, sc)) < ru;
    if (signal == Signal::unicast || first_fails) return first_fails;
    return std::log2(1.0 + noma::sinr_no_multicast(gain, sc)) < rm;
}

double wilson_half_width(std::int64_t successes, std::int64_t n) {
    if (n <= 0) return 0.0;
    const double p = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    return kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
}

McEstimate outage_from_gains(const noma::Scenario& sc, noma::Signal signal, std::span<const double> gains) {
    std::int64_t events = 0;
    for (double g : gains) events += outage_event(g, sc, signal) ? 1 : 0;
    const auto n = static_cast<std::int64_t>(gains.size());
    return {n ? static_cast<double>(events) / n : 0.0, wilson_half_width(events, n), n};
}

McEstimate capacity_from_gains(const noma::Scenario& sc, noma::Signal signal, std::span<const double> gains) {
    std::vector<double> rates(gains.size());
    std::transform(gains.begin(), gains.end(), rates.begin(),
                   [&](double g) { return std::log2(1.0 + noma::sinr(g, sc, signal)); });
    return mean_estimate(rates);
}

McEstimate tdma_capacity_from_gains(const noma::Scenario& sc, std::span<const double> gains) {
    std::vector<double> rates(gains.size());
    std::transform(gains.begin(), gains.end(), rates.begin(), [&](double g) {
        return 0.5 * std::log2(1.0 + g * sc.budget.gamma / sc.budget.noise_power);
    });
    return mean_estimate(rates);
}

McEstimate mc_outage(const noma::Scenario& sc, noma::Signal signal, const McConfig& mc) {
    const auto gains = sample_cascaded_gains(sc.ris, sc.rician, mc);
    return outage_from_gains(sc, signal, gains);
}

McEstimate mc_capacity(const noma::Scenario& sc, noma::Signal signal, const McConfig& mc) {
    const auto gains = sample_cascaded_gains(sc.ris, sc.rician, mc);
    return capacity_from_gains(sc, signal, gains);
}

double ks_distance_from_gains(std::vector<double> gains, const channel::ChannelMoments& cm) {
    std::sort(gains.begin(), gains.end());
    const double n = static_cast<double>(gains.size());
    double d = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        const double f = channel::effective_gain_cdf(gains[i], cm);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

double ks_distance(const channel::RisArray& ris, const channel::RicianParams& rp, const McConfig& mc) {
    if (mc.trials < 10000) throw DomainError("ks_distance: at least 1e4 trials required");
    return ks_distance_from_gains(sample_cascaded_gains(ris, rp, mc), channel::cascaded_moments(ris, rp));
}

}  // namespace inac::montecarlo
