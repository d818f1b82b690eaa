#pragma once

#include "tcpdist/probability.hpp"

namespace tcpdist::special {

/// Modified Bessel function of the first kind, order zero.
///
/// Power series for |x| <= 15, asymptotic expansion beyond. Throws
/// std::overflow_error when I0(x) is not representable as a double
/// (|x| above roughly 713.98); use bessel_i0e there.
double bessel_i0(double x);

/// Exponentially scaled I0: I0(x) * exp(-|x|). Finite for every finite x.
double bessel_i0e(double x);

/// log(I0(x)), finite for every finite x.
double log_bessel_i0(double x);

/// First-order Marcum Q-function
///
///   Q1(a, b) = integral_b^inf y exp(-(y^2 + a^2)/2) I0(a y) dy,
///
/// i.e. the survival function at b of a Rician variate with noncentrality a
/// and unit scale. Requires a >= 0 and b >= 0 (std::domain_error otherwise).
///
/// Evaluated as P(Poisson(b^2/2) <= Poisson(a^2/2)) by summing Poisson
/// weights times regularized incomplete gamma terms outward from the mode,
/// with all weights in the log domain. Whichever of Q1 and 1 - Q1 is the
/// smaller tail is summed directly, so both keep relative accuracy.
Probability marcum_q1(double a, double b);

/// 1 - Q1(a, b), computed without cancellation (the Rician CDF at b).
Probability marcum_q1_complement(double a, double b);

/// Rician density with noncentrality nu and scale sigma, evaluated in the log
/// domain so large u*nu/sigma^2 does not overflow. Requires u >= 0, nu >= 0,
/// sigma > 0.
double rician_pdf(double u, double nu, double sigma);

/// Rayleigh density v/sigma^2 exp(-v^2 / (2 sigma^2)). Requires v >= 0,
/// sigma > 0.
double rayleigh_pdf(double v, double sigma);

}  // namespace tcpdist::special
