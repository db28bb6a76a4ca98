#pragma once

#include <vector>

#include "pcclone/fidelity.hpp"

namespace pcclone {

struct OptimumReport {
    FeedforwardParams best;
    FidelityResult fidelity;
    int grid_evals = 0;
    int refine_iters = 0;
    bool converged = false;
};

// Maximize the feedforward fidelity over (theta, k) for the given scheme:
// 64 x 64 coarse grid on [0, pi] x [0, 2 sqrt(M) + sqrt(N)], then
// Nelder-Mead refinement from the best cell (one restart from a perturbed
// best vertex).  Converged when the simplex fidelity spread drops below
// opt_tol; ties within opt_tol break toward smaller (theta, k).
// Deterministic: identical inputs give identical reports.
OptimumReport optimize_ff(const SchemeConfig& cfg, SeriesControl ctrl = {},
                          double opt_tol = 1e-6);

struct AlphaSweepRow {
    double alpha = 0.0;
    Scheme scheme = Scheme::FfSg;
    OptimumReport report;
};

// One optimized row per (alpha, scheme); measure-and-prepare schemes carry
// their fixed fidelity with best = (0, 0).  eta applies to the DH schemes.
std::vector<AlphaSweepRow> sweep_alpha(SchemeConfig base, const std::vector<double>& alphas,
                                       const std::vector<Scheme>& schemes, double eta = 1.0,
                                       SeriesControl ctrl = {}, double opt_tol = 1e-6);

struct MSweepRow {
    int m_out = 0;
    OptimumReport report;
};

// Optimized feedforward fidelity versus the output copy number.
std::vector<MSweepRow> sweep_m(SchemeConfig base, const std::vector<int>& m_grid,
                               SeriesControl ctrl = {}, double opt_tol = 1e-6);

}  // namespace pcclone
