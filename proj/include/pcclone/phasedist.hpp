#pragma once

#include <cstdint>
#include <vector>

#include "pcclone/rng.hpp"

namespace pcclone {

enum class MeasurementKind { IdealSG, DoubleHomodyne };

// Phase-measurement model: ideal (Susskind-Glogower POVM) or double-homodyne
// detection with quantum efficiency eta in (0,1].  Inefficiency enters only
// through the excess noise Delta^2_eta = (1-eta)/eta.
struct MeasurementModel {
    MeasurementKind kind = MeasurementKind::IdealSG;
    double eta = 1.0;

    static MeasurementModel ideal_sg() { return {MeasurementKind::IdealSG, 1.0}; }
    static MeasurementModel double_homodyne(double eta) {
        return {MeasurementKind::DoubleHomodyne, eta};
    }

    double noise_var() const { return (1.0 - eta) / eta; }
    void validate() const;
};

// Series truncation control.  n_max == 0 selects the cutoff automatically as
// ceil(x^2 + 10x + 20) (>= 50) for series argument x; the Poisson-like
// weights are negligible past mean + 10 standard deviations.
struct SeriesControl {
    int n_max = 0;
    double tail_tol = 1e-9;

    int resolve(double x) const;
};

// Phase distribution of a coherent state of modulus gamma_mod measured with
// `model`, evaluated with the amplitude taken real and nonnegative (the
// covariance convention: rotate outcomes by arg(gamma) at the caller).
class PhaseDensity {
public:
    PhaseDensity(MeasurementModel model, double gamma_mod, SeriesControl ctrl = {});

    // density at phi, normalized over [0, 2pi)
    double operator()(double phi) const;

    const MeasurementModel& model() const { return model_; }
    double gamma_mod() const { return gamma_; }
    int n_max() const { return n_max_; }

private:
    MeasurementModel model_;
    double gamma_;
    int n_max_;
    // IdealSG: per-n amplitude weights e^{n ln g - ln(n!)/2 - g^2/2};
    // DoubleHomodyne: cosine-fold weights v_d of the closed-form double series.
    std::vector<double> w_;
};

// p(phi) = (1/2pi) e^{-g^2} | sum_n g^n e^{i n phi} / sqrt(n!) |^2
double sg_density(double phi, double gamma_mod, SeriesControl ctrl = {});

// Heterodyne phase marginal with efficiency eta (closed-form double series
// folded over n - m).
double dh_density(double phi, double gamma_mod, double eta, SeriesControl ctrl = {});

// Tabulated inverse-CDF sampler over [0, 2pi): 4096-node grid, linear
// interpolation.  Deterministic for a given generator stream.  Instances are
// immutable after construction and safe to share across threads; the caller
// owns the generator.
class InverseCdfSampler {
public:
    static constexpr int kGridNodes = 4096;

    explicit InverseCdfSampler(const PhaseDensity& density);

    double draw(SplitMix64& gen) const { return invert(gen.uniform01()); }
    double invert(double u) const;  // u in [0,1) -> phi

private:
    std::vector<double> cdf_;  // cdf_[j] at phi_j = 2pi j / kGridNodes, j = 0..kGridNodes
};

// count i.i.d. draws from the phase distribution; deterministic in rng_seed.
// Samples are generated in fixed batches of 4096 with one substream per
// batch, so results do not depend on how the work is split.
std::vector<double> sample_phase(const MeasurementModel& model, double gamma_mod,
                                 std::uint64_t rng_seed, std::size_t count,
                                 SeriesControl ctrl = {});

// Operational double-homodyne sampling: draw the complex outcome from the
// isotropic Gaussian of per-axis variance (Delta^2_eta + 1)/2 centered at
// gamma_mod, return its argument in [0, 2pi).  Independent of the series
// route, which makes it a cross-check of the closed form.
std::vector<double> dh_sample_direct(double gamma_mod, double eta, std::uint64_t rng_seed,
                                     std::size_t count);

}  // namespace pcclone
