#pragma once

#include <vector>

namespace pcclone {

// Cosine-folded weights of a symmetric double series:
//   sum_{n,m>=0} w(n,m) e^{i phi (n-m)} = v[0] + 2 sum_{d>=1} v[d] cos(d phi)
// with v[d] = sum_m w(m+d, m).  Folding halves the work and keeps every
// downstream result exactly real.  `edge` is the retained boundary mass
// sum_d (2 - delta_{d0}) w(n_max, n_max - d), the raw material for
// truncation-tail estimates.
struct FoldedWeights {
    std::vector<double> v;  // d = 0..n_max
    double edge = 0.0;
};

// w(n,m) = x^{n+m} e^{-x^2} / sqrt(n! m!)            (ideal-phase kernel)
FoldedWeights fold_poisson_amplitude(double x, int n_max);

// w(n,m) = Gamma((n+m)/2 + 1) x^{n+m} e^{-x^2} / (n! m!)   (heterodyne kernel)
FoldedWeights fold_gamma_poisson(double x, int n_max);

}  // namespace pcclone
