#pragma once

#include <vector>

namespace pcclone::specfun {

// Exponentially scaled modified Bessel function e^{-z} I_m(z) for integer
// order m and z >= 0.  Scaled values always lie in (0, 1], so no overflow is
// possible for any argument this library produces (z = 2|alpha|^2 and the
// feedforward cross term).  Negative orders use I_{-m} = I_m.
//
// Accuracy: relative error < 1e-12 for z <= 200, |m| <= 2000 (values below
// the double underflow threshold flush to zero).
double scaled_bessel_i(int order, double z);

// Whole row e^{-z} I_m(z), m = 0..m_max, in one backward-recurrence pass
// (Miller's algorithm, normalized with e^z = I_0 + 2 sum_k I_k, entirely in
// the scaled domain).  This is the form every series summation consumes.
std::vector<double> scaled_bessel_row(int m_max, double z);

// ln Gamma(x), x > 0.  Lanczos approximation (g = 7, 9 coefficients).
double log_gamma(double x);

// ln n!; exact product for n <= 20, log_gamma(n + 1) beyond.
double log_factorial(int n);

}  // namespace pcclone::specfun
