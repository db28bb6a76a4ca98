#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "pcclone/fidelity.hpp"

namespace pcclone {

// One pass of the operational scheme.  Coherent-state arithmetic is
// deterministic (the multisplitter and beam splitter are amplitude maps);
// the measured phase is the only random ingredient.
struct TrajectoryRecord {
    double input_phase = 0.0;     // arg(alpha)
    double measured_phase = 0.0;  // phi, already rotated into the lab frame
    std::complex<double> clone_amplitude;
    double fidelity_sample = 1.0;  // e^{-|alpha - clone|^2}
};

struct EstimateResult {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(samples)
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

// Builds the record from the canonical phase draw (measured phase relative
// to the input phase).  Feedforward when par is present, measure-and-prepare
// otherwise.
TrajectoryRecord make_trajectory(const SchemeConfig& cfg,
                                 const std::optional<FeedforwardParams>& par, double input_phase,
                                 double phi_canonical);

// Monte Carlo estimate of the feedforward fidelity; deterministic in seed
// (fixed 4096-sample substream batches).
EstimateResult simulate_feedforward(const SchemeConfig& cfg, const FeedforwardParams& par,
                                    std::int64_t samples, std::uint64_t seed);

// Monte Carlo estimate of the measure-and-prepare fidelity.
EstimateResult simulate_semiclassical(const SchemeConfig& cfg, std::int64_t samples,
                                      std::uint64_t seed);

// Full pipeline with complex input alpha = |alpha| e^{i input_phase}; the
// estimate must not depend on input_phase (phase covariance).
EstimateResult covariance_check(const SchemeConfig& cfg,
                                const std::optional<FeedforwardParams>& par, double input_phase,
                                std::int64_t samples, std::uint64_t seed);

}  // namespace pcclone
