#include "pcclone/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace pcclone {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kGridPoints = 64;

struct Vertex {
    double theta = 0.0;
    double k = 0.0;
    double f = 0.0;
};

struct Box {
    double k_max = 0.0;
    void clamp(double& theta, double& k) const {
        theta = std::clamp(theta, 0.0, kPi);
        k = std::clamp(k, 0.0, k_max);
    }
};

// Nelder-Mead on the clamped box, maximizing f.  Returns iterations used.
int refine_simplex(FfSeriesEvaluator& eval, const Box& box, std::array<Vertex, 3>& simplex,
                   double opt_tol, int max_iters, bool& converged) {
    auto evaluate = [&](double theta, double k) {
        box.clamp(theta, k);
        return Vertex{theta, k, eval.value(theta, k)};
    };
    auto order = [&] {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
    };

    order();
    int iter = 0;
    converged = false;
    for (; iter < max_iters; ++iter) {
        if (simplex[0].f - simplex[2].f < opt_tol) {
            converged = true;
            break;
        }
        const double cth = 0.5 * (simplex[0].theta + simplex[1].theta);
        const double ck = 0.5 * (simplex[0].k + simplex[1].k);
        const Vertex& worst = simplex[2];

        Vertex refl = evaluate(cth + (cth - worst.theta), ck + (ck - worst.k));
        if (refl.f > simplex[0].f) {
            Vertex exp_v = evaluate(cth + 2.0 * (cth - worst.theta), ck + 2.0 * (ck - worst.k));
            simplex[2] = (exp_v.f > refl.f) ? exp_v : refl;
        } else if (refl.f > simplex[1].f) {
            simplex[2] = refl;
        } else {
            const bool outside = refl.f > worst.f;
            Vertex con = outside
                             ? evaluate(cth + 0.5 * (refl.theta - cth), ck + 0.5 * (refl.k - ck))
                             : evaluate(cth + 0.5 * (worst.theta - cth), ck + 0.5 * (worst.k - ck));
            if (con.f > (outside ? refl.f : worst.f)) {
                simplex[2] = con;
            } else {
                // shrink toward the best vertex
                for (int i = 1; i < 3; ++i)
                    simplex[static_cast<std::size_t>(i)] = evaluate(
                        simplex[0].theta + 0.5 * (simplex[static_cast<std::size_t>(i)].theta -
                                                  simplex[0].theta),
                        simplex[0].k + 0.5 * (simplex[static_cast<std::size_t>(i)].k - simplex[0].k));
            }
        }
        order();
    }
    return iter;
}

std::array<Vertex, 3> initial_simplex(FfSeriesEvaluator& eval, const Box& box, double theta0,
                                      double k0, double h_theta, double h_k) {
    auto evaluate = [&](double theta, double k) {
        box.clamp(theta, k);
        return Vertex{theta, k, eval.value(theta, k)};
    };
    const double t1 = (theta0 + h_theta <= kPi) ? theta0 + h_theta : theta0 - h_theta;
    const double k1 = (k0 + h_k <= box.k_max) ? k0 + h_k : k0 - h_k;
    return {evaluate(theta0, k0), evaluate(t1, k0), evaluate(theta0, k1)};
}

}  // namespace

OptimumReport optimize_ff(const SchemeConfig& cfg, SeriesControl ctrl, double opt_tol) {
    cfg.validate();
    if (!(opt_tol > 0.0)) throw std::domain_error("optimize_ff: opt_tol must be > 0");

    FfSeriesEvaluator eval(cfg, ctrl);
    const Box box{2.0 * std::sqrt(static_cast<double>(cfg.m_out)) +
                  std::sqrt(static_cast<double>(cfg.n_in))};

    // coarse grid; the outer loop fixes theta so the evaluator reuses its fold
    double best_theta = 0.0, best_k = 0.0, best_f = -1.0;
    for (int i = 0; i < kGridPoints; ++i) {
        const double theta = kPi * i / (kGridPoints - 1);
        for (int j = 0; j < kGridPoints; ++j) {
            const double k = box.k_max * j / (kGridPoints - 1);
            const double f = eval.value(theta, k);
            if (f > best_f) {
                best_f = f;
                best_theta = theta;
                best_k = k;
            }
        }
    }

    const double h_theta = kPi / (kGridPoints - 1);
    const double h_k = box.k_max / (kGridPoints - 1);

    bool converged = false;
    auto simplex = initial_simplex(eval, box, best_theta, best_k, h_theta, h_k);
    int iters = refine_simplex(eval, box, simplex, opt_tol, 400, converged);

    // one restart from a perturbed best vertex, to escape flat regions
    bool converged2 = false;
    auto simplex2 = initial_simplex(eval, box, std::min(simplex[0].theta + h_theta / 7.0, kPi),
                                    std::min(simplex[0].k + h_k / 7.0, box.k_max), h_theta / 5.0,
                                    h_k / 5.0);
    iters += refine_simplex(eval, box, simplex2, opt_tol, 400, converged2);
    if (simplex2[0].f > simplex[0].f) simplex[0] = simplex2[0];

    FeedforwardParams best{simplex[0].theta, simplex[0].k};
    double f_best = simplex[0].f;

    // ties break toward smaller (theta, k): prefer the splitting-only corner,
    // then the cos(theta) >= 0 half of the box
    if (eval.value(0.0, 0.0) >= f_best - opt_tol) {
        best = {0.0, 0.0};
    } else if (best.theta > kPi / 2.0 && eval.value(kPi - best.theta, best.k) >= f_best - opt_tol) {
        best.theta = kPi - best.theta;
    }
    if (std::abs(best.theta) < 1e-12) best.theta = 0.0;
    if (std::abs(best.k) < 1e-12) best.k = 0.0;

    OptimumReport report;
    report.best = best;
    report.fidelity = cfg.model.kind == MeasurementKind::IdealSG ? fid_ff_sg(cfg, best, ctrl)
                                                                 : fid_ff_dh(cfg, best, ctrl);
    report.grid_evals = kGridPoints * kGridPoints;
    report.refine_iters = iters;
    report.converged = converged && converged2;
    return report;
}

std::vector<AlphaSweepRow> sweep_alpha(SchemeConfig base, const std::vector<double>& alphas,
                                       const std::vector<Scheme>& schemes, double eta,
                                       SeriesControl ctrl, double opt_tol) {
    if (alphas.empty()) throw std::domain_error("sweep_alpha: alpha grid must be nonempty");
    std::vector<AlphaSweepRow> rows;
    rows.reserve(alphas.size() * schemes.size());
    for (double alpha : alphas) {
        for (Scheme scheme : schemes) {
            SchemeConfig cfg = base;
            cfg.alpha_mod = alpha;
            cfg.model = scheme_kind(scheme) == MeasurementKind::IdealSG
                            ? MeasurementModel::ideal_sg()
                            : MeasurementModel::double_homodyne(eta);
            AlphaSweepRow row;
            row.alpha = alpha;
            row.scheme = scheme;
            if (scheme_is_feedforward(scheme)) {
                row.report = optimize_ff(cfg, ctrl, opt_tol);
            } else {
                row.report.best = {0.0, 0.0};
                row.report.fidelity = fid_series(cfg, std::nullopt, ctrl);
                row.report.converged = true;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<MSweepRow> sweep_m(SchemeConfig base, const std::vector<int>& m_grid,
                               SeriesControl ctrl, double opt_tol) {
    std::vector<MSweepRow> rows;
    rows.reserve(m_grid.size());
    for (int m : m_grid) {
        SchemeConfig cfg = base;
        cfg.m_out = m;
        MSweepRow row;
        row.m_out = m;
        row.report = optimize_ff(cfg, ctrl, opt_tol);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pcclone
