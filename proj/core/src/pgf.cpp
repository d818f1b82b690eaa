#include "tcpdist/pgf.hpp"

#include "tcpdist/quadrature.hpp"
#include "tcpdist/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tcpdist::pgf {
namespace {

void require_radius(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::domain_error("radius must be finite and >= 0");
}

// 1 - rho = (1 - theta)(1 - Q1)
double one_minus_rho(double theta, double v0, double r, double sigma) {
  return (1.0 - theta) * special::marcum_q1_complement(v0 / sigma, r / sigma).value();
}

// E[rho^(N-1)] for N zero-truncated Poisson(m):
//   sum_{l>=1} rho^{l-1} m^l e^{-m} / (l! (1 - e^{-m})) = (e^{m rho} - 1) / (rho (e^m - 1))
double truncated_sibling_pgf(double rho_value, double m_bar) {
  if (rho_value < 1e-12) return m_bar / std::expm1(m_bar);
  return std::expm1(m_bar * rho_value) / (rho_value * std::expm1(m_bar));
}

// G_C(theta) * (1 - own_miss), own_miss = int (1 - own(v0)) f_V0(v0) dv0
template <typename OwnClusterPgf>
Probability palm_pgf(const TcpParams& p, double r, PgfArgument theta, const QuadratureConfig& q,
                     OwnClusterPgf own) {
  const double g_contact = pgf_contact(p, r, theta, q);
  if (r == 0.0 || theta.value() == 1.0) return Probability::clamped(g_contact);
  const auto integrand = [&](double v0) {
    return (1.0 - own(v0)) * special::rayleigh_pdf(v0, p.sigma);
  };
  const double own_miss = quad::integrate_semi_infinite(integrand, r, p.sigma, q).value;
  return Probability::clamped(g_contact * (1.0 - own_miss));
}

}  // namespace

PgfArgument::PgfArgument(double theta) : theta_(theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::domain_error("PGF argument must lie in [0,1], got " + std::to_string(theta));
  }
}

Probability pgf_contact(const TcpParams& p, double r, PgfArgument theta, const QuadratureConfig& q) {
  p.validate();
  require_radius(r);
  const double t = theta.value();
  if (r == 0.0 || t == 1.0) return Probability(1.0);
  const auto integrand = [&](double v) {
    return -std::expm1(-p.m_bar * one_minus_rho(t, v, r, p.sigma)) * v;
  };
  const double integral = quad::integrate_semi_infinite(integrand, r, p.sigma, q).value;
  return Probability::clamped(std::exp(-2.0 * std::numbers::pi * p.lambda_p * integral));
}

Probability rho(PgfArgument theta, double v0, double r, double sigma) {
  if (!(v0 >= 0.0)) throw std::domain_error("rho: v0 must be >= 0");
  require_radius(r);
  if (!(sigma > 0.0)) throw std::domain_error("rho: sigma must be > 0");
  return Probability::clamped(1.0 - one_minus_rho(theta.value(), v0, r, sigma));
}

Probability pgf_nn_case1(const TcpParams& p, double r, PgfArgument theta, const QuadratureConfig& q) {
  // Poisson(m) siblings: E[rho^K] = exp(-m (1 - rho))
  const double t = theta.value();
  return palm_pgf(p, r, theta, q, [&](double v0) {
    return std::exp(-p.m_bar * one_minus_rho(t, v0, r, p.sigma));
  });
}

Probability pgf_nn_case2(const TcpParams& p, double r, PgfArgument theta, const QuadratureConfig& q) {
  const double t = theta.value();
  return palm_pgf(p, r, theta, q, [&](double v0) {
    const double rho_value = 1.0 - one_minus_rho(t, v0, r, p.sigma);
    return truncated_sibling_pgf(rho_value, p.m_bar);
  });
}

}  // namespace tcpdist::pgf
