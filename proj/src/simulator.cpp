#include "pcclone/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pcclone/rng.hpp"

namespace pcclone {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::int64_t kBatch = 4096;

double wrap_angle(double phi) {
    phi = std::fmod(phi, kTwoPi);
    return phi < 0.0 ? phi + kTwoPi : phi;
}
}  // namespace

TrajectoryRecord make_trajectory(const SchemeConfig& cfg,
                                 const std::optional<FeedforwardParams>& par, double input_phase,
                                 double phi_canonical) {
    const double a = cfg.alpha_mod;
    const std::complex<double> alpha = std::polar(a, input_phase);

    TrajectoryRecord rec;
    rec.input_phase = input_phase;
    rec.measured_phase = wrap_angle(phi_canonical + input_phase);

    if (par) {
        const double rn = std::sqrt(static_cast<double>(cfg.n_in));
        const double rm = std::sqrt(static_cast<double>(cfg.m_out));
        // kept arm sqrt(N) alpha cos(theta), displaced by k|alpha|e^{i phi},
        // redistributed over M
        rec.clone_amplitude =
            (rn * alpha * std::cos(par->theta) + std::polar(par->k * a, rec.measured_phase)) / rm;
    } else {
        // prepare |alpha| with the estimated phase
        rec.clone_amplitude = std::polar(a, rec.measured_phase);
    }
    rec.fidelity_sample = std::exp(-std::norm(alpha - rec.clone_amplitude));
    return rec;
}

EstimateResult covariance_check(const SchemeConfig& cfg,
                                const std::optional<FeedforwardParams>& par, double input_phase,
                                std::int64_t samples, std::uint64_t seed) {
    cfg.validate();
    if (samples < 1000) throw std::domain_error("simulate: samples must be >= 1000");

    const double rn = std::sqrt(static_cast<double>(cfg.n_in));
    const double gamma_mod =
        par ? rn * cfg.alpha_mod * std::sin(par->theta) : rn * cfg.alpha_mod;

    PhaseDensity density(cfg.model, gamma_mod);
    InverseCdfSampler sampler(density);

    // Welford accumulation; batches get fixed substreams so the estimate is
    // independent of any future re-batching.
    double mean = 0.0, m2 = 0.0;
    std::int64_t n = 0;
    for (std::int64_t b = 0; b * kBatch < samples; ++b) {
        SplitMix64 gen = substream(seed, static_cast<std::uint64_t>(b));
        const std::int64_t end = std::min(samples, (b + 1) * kBatch);
        for (std::int64_t i = b * kBatch; i < end; ++i) {
            const double phi = sampler.draw(gen);
            const TrajectoryRecord rec = make_trajectory(cfg, par, input_phase, phi);
            ++n;
            const double delta = rec.fidelity_sample - mean;
            mean += delta / static_cast<double>(n);
            m2 += delta * (rec.fidelity_sample - mean);
        }
    }

    EstimateResult out;
    out.mean = mean;
    out.std_error = (n > 1) ? std::sqrt(m2 / (static_cast<double>(n - 1) * static_cast<double>(n)))
                            : 0.0;
    out.samples = n;
    out.seed = seed;
    return out;
}

EstimateResult simulate_feedforward(const SchemeConfig& cfg, const FeedforwardParams& par,
                                    std::int64_t samples, std::uint64_t seed) {
    return covariance_check(cfg, par, 0.0, samples, seed);
}

EstimateResult simulate_semiclassical(const SchemeConfig& cfg, std::int64_t samples,
                                      std::uint64_t seed) {
    return covariance_check(cfg, std::nullopt, 0.0, samples, seed);
}

}  // namespace pcclone
