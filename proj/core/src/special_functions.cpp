#include "tcpdist/special_functions.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace tcpdist::special {
namespace {

constexpr double kSeriesLimit = 15.0;
constexpr double kMarcumRelTol = 1e-13;
constexpr long kMarcumMaxTerms = 10'000'000;

// sum_k (x^2/4)^k / (k!)^2
double i0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// I0(x) e^{-x} sqrt(2 pi x) = sum_k ((2k-1)!!)^2 / (k! (8x)^k), truncated at
// the smallest term.
double i0e_asymptotic(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 100; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (next > term) break;
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double log_poisson_pmf(long k, double mean) {
  if (mean == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return static_cast<double>(k) * std::log(mean) - mean - std::lgamma(static_cast<double>(k) + 1.0);
}

// P(B <= A + shift) for independent A ~ Poisson(mean_a), B ~ Poisson(mean_b)
// and shift in {0, -1}.
//
// The sum over A's value k of pA(k) * F_B(k + shift) starts at the mode of A.
// Upward, F_B grows by adding pB terms (stable). Downward, F_B shrinks by
// subtraction; its absolute error stays at the ulp of the starting value, which
// is negligible relative to the starting term already in the sum. Both
// directions stop on a rigorous bound for the remaining Poisson mass of A.
double poisson_dominance(double mean_a, double mean_b, long shift) {
  const long k0 = static_cast<long>(std::floor(mean_a));
  const double log_a = mean_a > 0.0 ? std::log(mean_a) : 0.0;
  const double log_b = mean_b > 0.0 ? std::log(mean_b) : 0.0;

  auto cdf_b = [&](long j) -> double {
    if (j < 0) return 0.0;
    if (mean_b == 0.0) return 1.0;
    return boost::math::gamma_q(static_cast<double>(j) + 1.0, mean_b);
  };

  const double log_pa0 = log_poisson_pmf(k0, mean_a);
  const long j0 = k0 + shift;
  const double fb0 = cdf_b(j0);
  double sum = std::exp(log_pa0) * fb0;

  // Upward: k = k0 + 1, k0 + 2, ...
  {
    double log_pa = log_pa0;
    double fb = fb0;
    double log_pb = log_poisson_pmf(j0, mean_b);  // pB(j) for the current j
    long j = j0;
    for (long k = k0 + 1;; ++k) {
      if (k - k0 > kMarcumMaxTerms) throw std::runtime_error("marcum_q1: series did not terminate");
      log_pa += (mean_a > 0.0 ? log_a - std::log(static_cast<double>(k)) : -std::numeric_limits<double>::infinity());
      ++j;
      if (j == 0) {
        log_pb = log_poisson_pmf(0, mean_b);
      } else if (j > 0) {
        log_pb += (mean_b > 0.0 ? log_b - std::log(static_cast<double>(j)) : -std::numeric_limits<double>::infinity());
      }
      if (j >= 0) fb = std::min(1.0, fb + std::exp(log_pb));
      const double pa = std::exp(log_pa);
      sum += pa * fb;
      // sum_{i>k} pA(i) <= pA(k) * rho / (1 - rho), rho = mean_a / (k + 2) < 1
      const double rho = mean_a / (static_cast<double>(k) + 2.0);
      const double tail = pa * rho / (1.0 - rho);
      if (tail <= kMarcumRelTol * sum || pa == 0.0) break;
    }
  }

  // Downward: k = k0 - 1, ..., 0
  {
    double log_pa = log_pa0;
    double fb = fb0;
    long j = j0;
    for (long k = k0 - 1; k >= 0; --k) {
      if (j < 0) break;
      fb -= std::exp(log_poisson_pmf(j, mean_b));
      --j;
      if (fb <= 0.0 || j < 0) break;
      log_pa += std::log(static_cast<double>(k + 1)) - log_a;
      const double term = std::exp(log_pa) * fb;
      sum += term;
      // remaining terms: F_B decreasing and pA ratio k/mean_a < 1
      const double rho = static_cast<double>(k) / mean_a;
      if (term * rho / (1.0 - rho) <= kMarcumRelTol * sum) break;
    }
  }
  return sum;
}

void require_nonneg(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(what) + " must be finite and >= 0");
  }
}

// Q1 when direct_q, else 1 - Q1, each summed directly.
double marcum_tail(double a, double b, bool direct_q) {
  const double x = 0.5 * a * a;
  const double y = 0.5 * b * b;
  // Q1 = P(Y <= X); 1 - Q1 = P(X <= Y - 1)
  return direct_q ? poisson_dominance(x, y, 0) : poisson_dominance(y, x, -1);
}

// Q1 is below about one half once b^2 exceeds a^2 + 2 ln 2.
bool q_is_smaller_tail(double a, double b) { return b * b > a * a + 2.0 * std::numbers::ln2; }

}  // namespace

double bessel_i0e(double x) {
  const double ax = std::fabs(x);
  if (ax <= kSeriesLimit) return i0_series(ax) * std::exp(-ax);
  return i0e_asymptotic(ax);
}

double bessel_i0(double x) {
  const double ax = std::fabs(x);
  if (ax <= kSeriesLimit) return i0_series(ax);
  const double value = i0e_asymptotic(ax) * std::exp(ax);
  if (!std::isfinite(value)) throw std::overflow_error("bessel_i0: result overflows; use bessel_i0e");
  return value;
}

double log_bessel_i0(double x) {
  const double ax = std::fabs(x);
  if (ax <= kSeriesLimit) return std::log(i0_series(ax));
  return std::log(i0e_asymptotic(ax)) + ax;
}

Probability marcum_q1(double a, double b) {
  require_nonneg(a, "marcum_q1: a");
  require_nonneg(b, "marcum_q1: b");
  if (b == 0.0) return Probability(1.0);
  if (a == 0.0) return Probability(std::exp(-0.5 * b * b));
  if (q_is_smaller_tail(a, b)) return Probability::clamped(marcum_tail(a, b, true));
  return Probability::clamped(1.0 - marcum_tail(a, b, false));
}

Probability marcum_q1_complement(double a, double b) {
  require_nonneg(a, "marcum_q1_complement: a");
  require_nonneg(b, "marcum_q1_complement: b");
  if (b == 0.0) return Probability(0.0);
  if (a == 0.0) return Probability::clamped(-std::expm1(-0.5 * b * b));
  if (q_is_smaller_tail(a, b)) return Probability::clamped(1.0 - marcum_tail(a, b, true));
  return Probability::clamped(marcum_tail(a, b, false));
}

double rician_pdf(double u, double nu, double sigma) {
  require_nonneg(u, "rician_pdf: u");
  require_nonneg(nu, "rician_pdf: nu");
  if (!(sigma > 0.0)) throw std::domain_error("rician_pdf: sigma must be > 0");
  if (u == 0.0) return 0.0;
  const double s2 = sigma * sigma;
  const double z = u * nu / s2;
  const double d = u - nu;
  // log I0(z) - z is log(i0e(z)); the -(u^2+nu^2)/2s^2 + z collapses to -(u-nu)^2/2s^2
  const double log_f = std::log(u / s2) - d * d / (2.0 * s2) + std::log(bessel_i0e(z));
  return std::exp(log_f);
}

double rayleigh_pdf(double v, double sigma) {
  require_nonneg(v, "rayleigh_pdf: v");
  if (!(sigma > 0.0)) throw std::domain_error("rayleigh_pdf: sigma must be > 0");
  const double s2 = sigma * sigma;
  return v / s2 * std::exp(-v * v / (2.0 * s2));
}

}  // namespace tcpdist::special
