#include "pcclone/fidelity.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "pcclone/quadrature.hpp"
#include "pcclone/specfun.hpp"

namespace pcclone {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// All four closed forms share one scaled shape:
//   F = e^G * sum_d (2 - delta_{d0}) v_d(x) * ibar_d(|zz|) * (sign zz)^d
// where v_d are cosine-fold weights carrying e^{-x^2}, ibar is the scaled
// Bessel row, and G <= 0 collects what is left of the exponential prefactor
// after absorbing e^{|zz|} into the row and e^{-x^2} into the weights.
struct SeriesShape {
    double x = 0.0;        // series argument
    double zz = 0.0;       // signed Bessel argument
    double log_pre = 0.0;  // G
    bool gamma_kernel = false;
};

FidelityResult eval_series_shape(const SeriesShape& sh, const FoldedWeights& w, int n_max,
                                 double tail_tol) {
    const double az = std::abs(sh.zz);
    const bool neg = sh.zz < 0.0;
    const auto row = specfun::scaled_bessel_row(n_max, az);

    double s = w.v[0] * row[0];
    for (int d = 1; d <= n_max; ++d) {
        const double t = 2.0 * w.v[static_cast<std::size_t>(d)] * row[static_cast<std::size_t>(d)];
        s += (neg && (d & 1)) ? -t : t;  // I_d(-z) = (-1)^d I_d(z)
    }

    const double pre = std::exp(sh.log_pre);
    double value = pre * s;
    const double tail = 2.0 * pre * w.edge;  // boundary shell, geometric factor 2

    if (!(tail <= tail_tol * std::max(std::abs(value), 1e-300)))
        throw std::domain_error("fidelity series: cutoff insufficient for requested tail tolerance");

    if (value > 1.0 && value < 1.0 + 1e-12) value = 1.0;  // exact-unity cases, fp residue

    FidelityResult out;
    out.value = value;
    out.terms_used = (n_max + 1) * (n_max + 1);
    out.tail_bound = tail;
    out.method = FidMethod::Series;
    return out;
}

FidelityResult eval_series(const SeriesShape& sh, SeriesControl ctrl) {
    const int n_max = ctrl.resolve(sh.x);
    const FoldedWeights w =
        sh.gamma_kernel ? fold_gamma_poisson(sh.x, n_max) : fold_poisson_amplitude(sh.x, n_max);
    return eval_series_shape(sh, w, n_max, ctrl.tail_tol);
}

SeriesShape cl_shape(const SchemeConfig& cfg) {
    const double a = cfg.alpha_mod;
    const double rn = std::sqrt(static_cast<double>(cfg.n_in));
    SeriesShape sh;
    sh.zz = 2.0 * a * a;
    sh.log_pre = 0.0;  // e^{-a^2(2+N)} e^{2a^2} = e^{-x^2}, absorbed into the weights
    if (cfg.model.kind == MeasurementKind::IdealSG) {
        sh.x = rn * a;
        sh.gamma_kernel = false;
    } else {
        sh.x = rn * a / std::sqrt(cfg.model.noise_var() + 1.0);
        sh.gamma_kernel = true;
    }
    return sh;
}

SeriesShape ff_shape(const SchemeConfig& cfg, const FeedforwardParams& par) {
    const double a = cfg.alpha_mod;
    const double rn = std::sqrt(static_cast<double>(cfg.n_in));
    const double rm = std::sqrt(static_cast<double>(cfg.m_out));
    const double sep = rm - rn * std::cos(par.theta);  // sqrt(M) - sqrt(N) cos(theta)
    SeriesShape sh;
    sh.zz = (2.0 * a * a / cfg.m_out) * sep * par.k;
    // e^{E} e^{|zz|} e^{x^2} = e^{-(a^2/M)(|sep| - k)^2}
    const double d = std::abs(sep) - par.k;
    sh.log_pre = -(a * a / cfg.m_out) * d * d;
    if (cfg.model.kind == MeasurementKind::IdealSG) {
        sh.x = rn * a * std::sin(par.theta);
        sh.gamma_kernel = false;
    } else {
        sh.x = rn * a * std::sin(par.theta) / std::sqrt(cfg.model.noise_var() + 1.0);
        sh.gamma_kernel = true;
    }
    return sh;
}

void validate_ff_params(const FeedforwardParams& par) {
    if (!(par.theta >= 0.0 && par.theta <= 3.14159265358979323846 + 1e-12))
        throw std::domain_error("FeedforwardParams: theta must lie in [0, pi]");
    if (!(par.k >= 0.0)) throw std::domain_error("FeedforwardParams: k must be >= 0");
}

void require_kind(const SchemeConfig& cfg, MeasurementKind kind, const char* op) {
    if (cfg.model.kind != kind)
        throw std::invalid_argument(std::string(op) + ": measurement model does not match scheme");
}

}  // namespace

void SchemeConfig::validate() const {
    if (n_in < 1) throw std::domain_error("SchemeConfig: n_in must be >= 1");
    if (m_out < 1) throw std::domain_error("SchemeConfig: m_out must be >= 1");
    if (!(alpha_mod >= 0.0)) throw std::domain_error("SchemeConfig: alpha_mod must be >= 0");
    model.validate();
}

FidelityResult fid_cl_sg(const SchemeConfig& cfg, SeriesControl ctrl) {
    cfg.validate();
    require_kind(cfg, MeasurementKind::IdealSG, "fid_cl_sg");
    return eval_series(cl_shape(cfg), ctrl);
}

FidelityResult fid_cl_dh(const SchemeConfig& cfg, SeriesControl ctrl) {
    cfg.validate();
    require_kind(cfg, MeasurementKind::DoubleHomodyne, "fid_cl_dh");
    return eval_series(cl_shape(cfg), ctrl);
}

FidelityResult fid_ff_sg(const SchemeConfig& cfg, const FeedforwardParams& par, SeriesControl ctrl) {
    cfg.validate();
    require_kind(cfg, MeasurementKind::IdealSG, "fid_ff_sg");
    validate_ff_params(par);
    return eval_series(ff_shape(cfg, par), ctrl);
}

FidelityResult fid_ff_dh(const SchemeConfig& cfg, const FeedforwardParams& par, SeriesControl ctrl) {
    cfg.validate();
    require_kind(cfg, MeasurementKind::DoubleHomodyne, "fid_ff_dh");
    validate_ff_params(par);
    return eval_series(ff_shape(cfg, par), ctrl);
}

FidelityResult fid_series(const SchemeConfig& cfg, const std::optional<FeedforwardParams>& par,
                          SeriesControl ctrl) {
    if (par) {
        return cfg.model.kind == MeasurementKind::IdealSG ? fid_ff_sg(cfg, *par, ctrl)
                                                          : fid_ff_dh(cfg, *par, ctrl);
    }
    return cfg.model.kind == MeasurementKind::IdealSG ? fid_cl_sg(cfg, ctrl)
                                                      : fid_cl_dh(cfg, ctrl);
}

FidelityResult fid_quadrature(const SchemeConfig& cfg, const std::optional<FeedforwardParams>& par,
                              double abs_tol, SeriesControl ctrl) {
    cfg.validate();
    const double a = cfg.alpha_mod;
    const double rn = std::sqrt(static_cast<double>(cfg.n_in));

    QuadratureResult q;
    if (par) {
        validate_ff_params(*par);
        const double rm = std::sqrt(static_cast<double>(cfg.m_out));
        const double kept = rn * a * std::cos(par->theta);
        const double gain = par->k * a;
        PhaseDensity density(cfg.model, rn * a * std::sin(par->theta), ctrl);
        auto f = [&](double phi) {
            const std::complex<double> clone{(kept + gain * std::cos(phi)) / rm,
                                             gain * std::sin(phi) / rm};
            const std::complex<double> diff = clone - std::complex<double>{a, 0.0};
            return std::exp(-std::norm(diff)) * density(phi);
        };
        q = integrate_adaptive(f, 0.0, kTwoPi, abs_tol);
    } else {
        PhaseDensity density(cfg.model, rn * a, ctrl);
        auto f = [&](double phi) {
            return std::exp(-2.0 * a * a * (1.0 - std::cos(phi))) * density(phi);
        };
        q = integrate_adaptive(f, 0.0, kTwoPi, abs_tol);
    }

    FidelityResult out;
    out.value = q.value;
    out.terms_used = q.evaluations;
    out.tail_bound = q.abs_error;  // achieved error bound, converged or not
    out.method = FidMethod::Quadrature;
    return out;
}

double fid_gaussian_benchmark(int n_in, int m_out) {
    if (n_in < 1) throw std::domain_error("fid_gaussian_benchmark: n_in must be >= 1");
    if (m_out < n_in) throw std::domain_error("fid_gaussian_benchmark: requires m_out >= n_in");
    const double n = n_in, m = m_out;
    return m * n / (m * n + m - n);
}

FfSeriesEvaluator::FfSeriesEvaluator(const SchemeConfig& cfg, SeriesControl ctrl)
    : cfg_(cfg), ctrl_(ctrl), cached_theta_(0.0) {
    cfg_.validate();
}

double FfSeriesEvaluator::value(double theta, double k) {
    const SeriesShape sh = ff_shape(cfg_, FeedforwardParams{theta, k});
    if (!have_cache_ || theta != cached_theta_) {
        n_max_ = ctrl_.resolve(sh.x);
        weights_ = sh.gamma_kernel ? fold_gamma_poisson(sh.x, n_max_)
                                   : fold_poisson_amplitude(sh.x, n_max_);
        cached_theta_ = theta;
        have_cache_ = true;
    }
    return eval_series_shape(sh, weights_, n_max_, ctrl_.tail_tol).value;
}

}  // namespace pcclone
