#include "tcpdist/model.hpp"

#include "tcpdist/parallel.hpp"
#include "tcpdist/quadrature.hpp"
#include "tcpdist/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tcpdist::model {
namespace {

constexpr double kBracketSwitch = 1e-12;

void require_radius(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::domain_error("radius must be finite and >= 0");
}

void require_ell(int ell) {
  if (ell < 1) throw std::domain_error("cluster-size PMF support is l >= 1");
}

void require_m_bar(double m_bar) {
  if (!(m_bar > 0.0) || !std::isfinite(m_bar)) throw std::domain_error("m_bar must be finite and > 0");
}

// Probability that a Rician(v, sigma) sibling falls inside b(o, r).
double inside_prob(double v, double r, double sigma) {
  return special::marcum_q1_complement(v / sigma, r / sigma).value();
}

Probability from_survival_parts(double exponent, double own_hit) {
  // F = 1 - exp(-E) (1 - hit) = F_C + S hit
  const double survival = std::exp(-exponent);
  return Probability::clamped(-std::expm1(-exponent) + survival * own_hit);
}

}  // namespace

double contact_exponent(const TcpParams& p, double r, const QuadratureConfig& q) {
  p.validate();
  require_radius(r);
  if (r == 0.0) return 0.0;
  const auto integrand = [&](double v) {
    return -std::expm1(-p.m_bar * inside_prob(v, r, p.sigma)) * v;
  };
  const auto res = quad::integrate_semi_infinite(integrand, r, p.sigma, q);
  return 2.0 * std::numbers::pi * p.lambda_p * res.value;
}

Probability contact_cdf(const TcpParams& p, double r, const QuadratureConfig& q) {
  return Probability::clamped(-std::expm1(-contact_exponent(p, r, q)));
}

Probability contact_cdf_bound(const TcpParams& p, double r) {
  p.validate();
  require_radius(r);
  return Probability::clamped(-std::expm1(-std::numbers::pi * p.intensity() * r * r));
}

double case1_own_cluster_hit(const TcpParams& p, double r, const QuadratureConfig& q) {
  p.validate();
  require_radius(r);
  if (r == 0.0) return 0.0;
  const auto integrand = [&](double v0) {
    return -std::expm1(-p.m_bar * inside_prob(v0, r, p.sigma)) * special::rayleigh_pdf(v0, p.sigma);
  };
  return quad::integrate_semi_infinite(integrand, r, p.sigma, q).value;
}

double case2_bracket(double x, double m_bar) {
  require_m_bar(m_bar);
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("case2_bracket: x must lie in [0,1]");
  if (x < kBracketSwitch) return m_bar / std::expm1(m_bar);
  return std::expm1(m_bar * x) / (x * std::expm1(m_bar));
}

double case2_own_cluster_hit(const TcpParams& p, double r, const QuadratureConfig& q) {
  p.validate();
  require_radius(r);
  if (r == 0.0) return 0.0;
  const auto integrand = [&](double v0) {
    const double q1 = special::marcum_q1(v0 / p.sigma, r / p.sigma).value();
    return (1.0 - case2_bracket(q1, p.m_bar)) * special::rayleigh_pdf(v0, p.sigma);
  };
  return quad::integrate_semi_infinite(integrand, r, p.sigma, q).value;
}

Probability nn_case1_cdf(const TcpParams& p, double r, const QuadratureConfig& q) {
  return from_survival_parts(contact_exponent(p, r, q), case1_own_cluster_hit(p, r, q));
}

Probability nn_case1_bound(const TcpParams& p, double r) {
  p.validate();
  require_radius(r);
  const double ppp = std::numbers::pi * p.intensity() * r * r;
  const double sibling = p.m_bar * -std::expm1(-r * r / (4.0 * p.sigma * p.sigma));
  return Probability::clamped(-std::expm1(-(ppp + sibling)));
}

Probability nn_case2_cdf(const TcpParams& p, double r, const QuadratureConfig& q) {
  return from_survival_parts(contact_exponent(p, r, q), case2_own_cluster_hit(p, r, q));
}

Probability size_biased_pmf(int ell, double m_bar) {
  require_ell(ell);
  require_m_bar(m_bar);
  // (l/m) m^l e^{-m} / l! = m^{l-1} e^{-m} / (l-1)!
  const double log_p = (ell - 1) * std::log(m_bar) - m_bar - std::lgamma(static_cast<double>(ell));
  return Probability::clamped(std::exp(log_p));
}

Probability truncated_pmf(int ell, double m_bar) {
  require_ell(ell);
  require_m_bar(m_bar);
  const double log_p = ell * std::log(m_bar) - m_bar - std::lgamma(ell + 1.0) - std::log(-std::expm1(-m_bar));
  return Probability::clamped(std::exp(log_p));
}

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::Contact: return "contact";
    case CurveKind::ContactBound: return "contact_bound";
    case CurveKind::NNCase1: return "nn1";
    case CurveKind::NNCase1Bound: return "nn1_bound";
    case CurveKind::NNCase2: return "nn2";
    case CurveKind::EmpiricalContact: return "empirical_contact";
    case CurveKind::EmpiricalNN1: return "empirical_nn1";
    case CurveKind::EmpiricalNN2: return "empirical_nn2";
  }
  return "unknown";
}

void CdfCurve::validate(double jitter) const {
  const std::string name(to_string(kind));
  if (radii.size() != values.size()) throw std::logic_error(name + ": radii/values size mismatch");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0)) throw std::logic_error(name + ": negative radius");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw std::logic_error(name + ": radii not increasing");
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) throw std::logic_error(name + ": value outside [0,1]");
    if (i > 0 && values[i] < values[i - 1] - jitter) {
      throw std::logic_error(name + ": not monotone at r=" + std::to_string(radii[i]));
    }
  }
}

void CurveSet::validate(double jitter) const {
  for (const CdfCurve* c : {&contact, &contact_bound, &nn1, &nn1_bound, &nn2}) {
    c->validate(jitter);
    if (c->radii != contact.radii) throw std::logic_error("curves on different grids");
  }
  auto dominated = [&](const CdfCurve& lo, const CdfCurve& hi) {
    for (std::size_t i = 0; i < lo.values.size(); ++i) {
      if (lo.values[i] > hi.values[i] + jitter) {
        throw std::logic_error(std::string(to_string(lo.kind)) + " exceeds " + std::string(to_string(hi.kind)) +
                               " at r=" + std::to_string(lo.radii[i]));
      }
    }
  };
  dominated(contact, nn2);
  dominated(nn2, nn1);
  dominated(nn1, nn1_bound);
  dominated(contact, contact_bound);
}

std::vector<double> uniform_grid(double r_max, int points) {
  if (!(r_max >= 0.0) || !std::isfinite(r_max)) throw std::invalid_argument("r_max must be finite and >= 0");
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  if (r_max == 0.0 || points == 1) return {r_max == 0.0 ? 0.0 : r_max};
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = r_max * i / (points - 1);
  grid.back() = r_max;
  return grid;
}

CurveSet evaluate_curves(const TcpParams& p, std::span<const double> radii, const QuadratureConfig& q,
                         unsigned workers) {
  p.validate();
  q.validate();
  const std::size_t n = radii.size();
  auto make = [&](CurveKind kind) {
    return CdfCurve{std::vector<double>(radii.begin(), radii.end()), std::vector<double>(n, 0.0), kind};
  };
  CurveSet set{make(CurveKind::Contact), make(CurveKind::ContactBound), make(CurveKind::NNCase1),
               make(CurveKind::NNCase1Bound), make(CurveKind::NNCase2)};

  parallel_for(n, workers, [&](std::size_t i) {
    const double r = radii[i];
    const double exponent = contact_exponent(p, r, q);
    set.contact.values[i] = Probability::clamped(-std::expm1(-exponent));
    set.contact_bound.values[i] = contact_cdf_bound(p, r);
    set.nn1.values[i] = from_survival_parts(exponent, case1_own_cluster_hit(p, r, q));
    set.nn1_bound.values[i] = nn_case1_bound(p, r);
    set.nn2.values[i] = from_survival_parts(exponent, case2_own_cluster_hit(p, r, q));
  });
  return set;
}

double sup_gap(const CdfCurve& upper, const CdfCurve& lower) {
  if (upper.values.size() != lower.values.size()) throw std::invalid_argument("sup_gap: grid mismatch");
  double gap = -1.0;
  for (std::size_t i = 0; i < upper.values.size(); ++i) gap = std::max(gap, upper.values[i] - lower.values[i]);
  return gap;
}

}  // namespace tcpdist::model
