#include "pcclone/phasedist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pcclone/series_fold.hpp"
#include "pcclone/specfun.hpp"

namespace pcclone {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void MeasurementModel::validate() const {
    if (kind == MeasurementKind::DoubleHomodyne && !(eta > 0.0 && eta <= 1.0))
        throw std::domain_error("MeasurementModel: eta must lie in (0, 1]");
}

int SeriesControl::resolve(double x) const {
    if (n_max > 0) return n_max;
    if (!(x >= 0.0)) throw std::domain_error("SeriesControl: series argument must be >= 0");
    const double sel = x * x + 10.0 * x + 20.0;
    return std::max(50, static_cast<int>(std::ceil(sel)));
}

FoldedWeights fold_poisson_amplitude(double x, int n_max) {
    FoldedWeights out;
    out.v.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (x == 0.0) {
        out.v[0] = 1.0;
        return out;
    }
    // amplitude weights a_n = x^n e^{-x^2/2} / sqrt(n!), so w(n,m) = a_n a_m
    const double lx = std::log(x);
    std::vector<double> a(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        a[static_cast<std::size_t>(n)] =
            std::exp(n * lx - 0.5 * specfun::log_factorial(n) - 0.5 * x * x);
    for (int d = 0; d <= n_max; ++d) {
        double s = 0.0;
        for (int m = 0; m + d <= n_max; ++m)
            s += a[static_cast<std::size_t>(m)] * a[static_cast<std::size_t>(m + d)];
        out.v[static_cast<std::size_t>(d)] = s;
        out.edge += (d == 0 ? 1.0 : 2.0) * a[static_cast<std::size_t>(n_max - d)] *
                    a[static_cast<std::size_t>(n_max)];
    }
    return out;
}

FoldedWeights fold_gamma_poisson(double x, int n_max) {
    FoldedWeights out;
    out.v.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (x == 0.0) {
        out.v[0] = 1.0;
        return out;
    }
    const double lx = std::log(x);
    const double x2 = x * x;
    // lgh[j] = ln Gamma(j/2 + 1) for j = n + m up to 2 n_max
    std::vector<double> lgh(2 * static_cast<std::size_t>(n_max) + 1);
    for (int j = 0; j <= 2 * n_max; ++j)
        lgh[static_cast<std::size_t>(j)] = specfun::log_gamma(0.5 * j + 1.0);
    std::vector<double> lf(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) lf[static_cast<std::size_t>(n)] = specfun::log_factorial(n);

    for (int d = 0; d <= n_max; ++d) {
        double s = 0.0;
        double term = 0.0;
        for (int m = 0; m + d <= n_max; ++m) {
            const int j = 2 * m + d;
            term = std::exp(lgh[static_cast<std::size_t>(j)] - lf[static_cast<std::size_t>(m)] -
                            lf[static_cast<std::size_t>(m + d)] + j * lx - x2);
            s += term;
        }
        out.v[static_cast<std::size_t>(d)] = s;
        out.edge += (d == 0 ? 1.0 : 2.0) * term;  // last m-term sits on the n = n_max boundary
    }
    return out;
}

PhaseDensity::PhaseDensity(MeasurementModel model, double gamma_mod, SeriesControl ctrl)
    : model_(model), gamma_(gamma_mod) {
    model_.validate();
    if (!(gamma_mod >= 0.0)) throw std::domain_error("PhaseDensity: gamma_mod must be >= 0");

    if (model_.kind == MeasurementKind::IdealSG) {
        n_max_ = ctrl.resolve(gamma_);
        w_.resize(static_cast<std::size_t>(n_max_) + 1);
        if (gamma_ == 0.0) {
            w_[0] = 1.0;
        } else {
            const double lg = std::log(gamma_);
            for (int n = 0; n <= n_max_; ++n)
                w_[static_cast<std::size_t>(n)] = std::exp(
                    n * lg - 0.5 * specfun::log_factorial(n) - 0.5 * gamma_ * gamma_);
        }
    } else {
        const double x = gamma_ / std::sqrt(model_.noise_var() + 1.0);
        n_max_ = ctrl.resolve(x);
        w_ = fold_gamma_poisson(x, n_max_).v;
    }
}

double PhaseDensity::operator()(double phi) const {
    if (model_.kind == MeasurementKind::IdealSG) {
        // |sum_n a_n e^{i n phi}|^2 / 2pi, accumulated with recurrent phasors
        const double c1 = std::cos(phi), s1 = std::sin(phi);
        double cr = 1.0, ci = 0.0;  // e^{i n phi}
        double re = 0.0, im = 0.0;
        for (std::size_t n = 0; n < w_.size(); ++n) {
            re += w_[n] * cr;
            im += w_[n] * ci;
            const double nr = cr * c1 - ci * s1;
            ci = cr * s1 + ci * c1;
            cr = nr;
        }
        return (re * re + im * im) / kTwoPi;
    }
    // v_0 + 2 sum_d v_d cos(d phi), cosines by the Chebyshev recurrence
    const double c1 = std::cos(phi);
    double c_prev = 1.0;  // cos((d-1) phi)
    double c_cur = c1;    // cos(d phi)
    double s = w_[0];
    for (std::size_t d = 1; d < w_.size(); ++d) {
        s += 2.0 * w_[d] * c_cur;
        const double c_next = 2.0 * c1 * c_cur - c_prev;
        c_prev = c_cur;
        c_cur = c_next;
    }
    return std::max(s, 0.0) / kTwoPi;  // truncation can leave a ~1e-18 negative tail
}

double sg_density(double phi, double gamma_mod, SeriesControl ctrl) {
    return PhaseDensity(MeasurementModel::ideal_sg(), gamma_mod, ctrl)(phi);
}

double dh_density(double phi, double gamma_mod, double eta, SeriesControl ctrl) {
    return PhaseDensity(MeasurementModel::double_homodyne(eta), gamma_mod, ctrl)(phi);
}

InverseCdfSampler::InverseCdfSampler(const PhaseDensity& density) {
    const int n = kGridNodes;
    cdf_.assign(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> pdf(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) pdf[static_cast<std::size_t>(j)] = density(kTwoPi * j / n);
    for (int j = 1; j <= n; ++j)
        cdf_[static_cast<std::size_t>(j)] =
            cdf_[static_cast<std::size_t>(j - 1)] +
            0.5 * (pdf[static_cast<std::size_t>(j - 1)] + pdf[static_cast<std::size_t>(j)]) *
                (kTwoPi / n);
    const double total = cdf_[static_cast<std::size_t>(n)];
    if (!(total > 0.0)) throw std::runtime_error("InverseCdfSampler: density integrates to zero");
    for (double& c : cdf_) c /= total;
    cdf_[static_cast<std::size_t>(n)] = 1.0;
}

double InverseCdfSampler::invert(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t hi = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        std::max<std::ptrdiff_t>(it - cdf_.begin(), 1), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
    const std::size_t lo = hi - 1;
    const double c0 = cdf_[lo], c1 = cdf_[hi];
    const double frac = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.0;
    return kTwoPi * (static_cast<double>(lo) + frac) / kGridNodes;
}

namespace {
constexpr std::size_t kBatch = 4096;  // fixed substream granularity
}

std::vector<double> sample_phase(const MeasurementModel& model, double gamma_mod,
                                 std::uint64_t rng_seed, std::size_t count, SeriesControl ctrl) {
    if (count < 1) throw std::domain_error("sample_phase: count must be >= 1");
    PhaseDensity density(model, gamma_mod, ctrl);
    InverseCdfSampler sampler(density);
    std::vector<double> out(count);
    for (std::size_t b = 0; b * kBatch < count; ++b) {
        SplitMix64 gen = substream(rng_seed, b);
        const std::size_t end = std::min(count, (b + 1) * kBatch);
        for (std::size_t i = b * kBatch; i < end; ++i) out[i] = sampler.draw(gen);
    }
    return out;
}

std::vector<double> dh_sample_direct(double gamma_mod, double eta, std::uint64_t rng_seed,
                                     std::size_t count) {
    if (count < 1) throw std::domain_error("dh_sample_direct: count must be >= 1");
    if (!(gamma_mod >= 0.0)) throw std::domain_error("dh_sample_direct: gamma_mod must be >= 0");
    if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("dh_sample_direct: eta must lie in (0, 1]");

    const double sigma = std::sqrt(0.5 * ((1.0 - eta) / eta + 1.0));
    std::vector<double> out(count);
    for (std::size_t b = 0; b * kBatch < count; ++b) {
        SplitMix64 gen = substream(rng_seed, b);
        const std::size_t end = std::min(count, (b + 1) * kBatch);
        for (std::size_t i = b * kBatch; i < end; ++i) {
            const double re = gamma_mod + sigma * standard_normal(gen);
            const double im = sigma * standard_normal(gen);
            double phi = std::atan2(im, re);
            if (phi < 0.0) phi += kTwoPi;
            out[i] = phi;
        }
    }
    return out;
}

}  // namespace pcclone
