#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace pcclone {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;  // accumulated error estimate
    int evaluations = 0;
    bool converged = false;
};

namespace quad_detail {

// Gauss 7 / Kronrod 15 nodes and weights (QUADPACK dqk15 constants)
inline constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
void gk15(F& f, double a, double b, double& value, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double resk = wgk[7] * fc;
    double resg = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * xgk[i];
        const double fs = f(c - dx) + f(c + dx);
        resk += wgk[i] * fs;
        if (i % 2 == 1) resg += wg[i / 2] * fs;
    }
    value = resk * h;
    const double diff = std::abs(resk - resg) * std::abs(h);
    // QUADPACK-style sharpened estimate, never larger than the raw difference
    err = (diff > 0.0) ? std::min(diff, std::pow(200.0 * diff, 1.5)) : 0.0;
}

}  // namespace quad_detail

// Adaptive Gauss-Kronrod integration of f over [a, b]: bisects the panel with
// the largest error estimate until the total estimate drops below abs_tol or
// the panel budget runs out (converged = false, error reported as achieved).
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-10,
                                    int max_panels = 2000) {
    struct Panel {
        double a, b, value, err;
        bool operator<(const Panel& o) const { return err < o.err; }
    };

    QuadratureResult out;
    Panel p{a, b, 0.0, 0.0};
    quad_detail::gk15(f, a, b, p.value, p.err);
    out.evaluations = 15;

    std::priority_queue<Panel> panels;
    panels.push(p);
    double total_value = p.value;
    double total_err = p.err;
    int n_panels = 1;

    while (total_err > abs_tol && n_panels < max_panels) {
        Panel worst = panels.top();
        panels.pop();
        total_value -= worst.value;
        total_err -= worst.err;

        const double mid = 0.5 * (worst.a + worst.b);
        Panel left{worst.a, mid, 0.0, 0.0};
        Panel right{mid, worst.b, 0.0, 0.0};
        quad_detail::gk15(f, left.a, left.b, left.value, left.err);
        quad_detail::gk15(f, right.a, right.b, right.value, right.err);
        out.evaluations += 30;

        total_value += left.value + right.value;
        total_err += left.err + right.err;
        panels.push(left);
        panels.push(right);
        ++n_panels;
    }

    out.value = total_value;
    out.abs_error = total_err;
    out.converged = total_err <= abs_tol;
    return out;
}

}  // namespace pcclone
