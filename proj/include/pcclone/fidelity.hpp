#pragma once

#include <optional>

#include "pcclone/phasedist.hpp"
#include "pcclone/series_fold.hpp"

namespace pcclone {

// N input copies, M output copies, amplitude modulus |alpha|, and the phase
// measurement used by the scheme.
struct SchemeConfig {
    int n_in = 1;
    int m_out = 2;
    double alpha_mod = 0.0;
    MeasurementModel model;

    void validate() const;
};

// Beam-splitter angle theta (transmissivity cos^2 theta) and displacement
// gain k of the feedforward D(k |alpha| e^{i phi}).
struct FeedforwardParams {
    double theta = 0.0;  // [0, pi]
    double k = 0.0;      // >= 0
};

enum class FidMethod { Series, Quadrature, MonteCarlo };

struct FidelityResult {
    double value = 0.0;
    int terms_used = 0;
    double tail_bound = 0.0;  // estimated truncation remainder (series) or quadrature error
    FidMethod method = FidMethod::Series;
};

enum class Scheme { ClSg, ClDh, FfSg, FfDh };

constexpr bool scheme_is_feedforward(Scheme s) {
    return s == Scheme::FfSg || s == Scheme::FfDh;
}
constexpr MeasurementKind scheme_kind(Scheme s) {
    return (s == Scheme::ClDh || s == Scheme::FfDh) ? MeasurementKind::DoubleHomodyne
                                                    : MeasurementKind::IdealSG;
}

// Measure-and-prepare with the ideal phase measurement:
//   F = e^{-|a|^2(2+N)} sum_{n,m} (sqrt(N)|a|)^{n+m} / sqrt(n! m!) I_{n-m}(2|a|^2).
// Independent of m_out.
FidelityResult fid_cl_sg(const SchemeConfig& cfg, SeriesControl ctrl = {});

// Measure-and-prepare with double-homodyne phase measurement.  The prefactor
// uses e^{-2|a|^2 - N|a|^2/(D^2+1)}, which the heterodyne phase marginal
// requires for eta < 1 and which reduces to e^{-|a|^2(2+N)} at eta = 1.
FidelityResult fid_cl_dh(const SchemeConfig& cfg, SeriesControl ctrl = {});

// Split / measure / displace / redistribute with the ideal phase measurement.
FidelityResult fid_ff_sg(const SchemeConfig& cfg, const FeedforwardParams& par,
                         SeriesControl ctrl = {});

// Same scheme with double-homodyne phase measurement; the 1/sqrt(D^2+1)
// attenuation applies per power of the series argument.
FidelityResult fid_ff_dh(const SchemeConfig& cfg, const FeedforwardParams& par,
                         SeriesControl ctrl = {});

// Dispatch on measurement kind and presence of feedforward parameters.
FidelityResult fid_series(const SchemeConfig& cfg,
                          const std::optional<FeedforwardParams>& par = std::nullopt,
                          SeriesControl ctrl = {});

// Direct numerical integration over the measured phase of
//   |<a | (sqrt(N) a cos(th) + k|a| e^{i phi})/sqrt(M)>|^2 p(phi | sqrt(N) a sin(th))
// (or the measure-and-prepare integrand when par is absent).  This is the
// independent oracle for every series operation above.
FidelityResult fid_quadrature(const SchemeConfig& cfg,
                              const std::optional<FeedforwardParams>& par = std::nullopt,
                              double abs_tol = 1e-10, SeriesControl ctrl = {});

// Optimal Gaussian-cloner reference F_NM = MN / (MN + M - N), M >= N >= 1.
double fid_gaussian_benchmark(int n_in, int m_out);

// Feedforward-series evaluator that caches the theta-dependent folded
// weights, so a (theta, k) grid pays the fold cost once per theta.  Produces
// exactly the same values as fid_ff_sg / fid_ff_dh.
class FfSeriesEvaluator {
public:
    FfSeriesEvaluator(const SchemeConfig& cfg, SeriesControl ctrl = {});
    double value(double theta, double k);

private:
    SchemeConfig cfg_;
    SeriesControl ctrl_;
    double cached_theta_;
    bool have_cache_ = false;
    FoldedWeights weights_;
    int n_max_ = 0;
};

}  // namespace pcclone
