#pragma once

#include "tcpdist/params.hpp"
#include "tcpdist/probability.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace tcpdist::model {

// ---------------------------------------------------------------------------
// Distance CDFs
//
// All exact CDFs share the contact-distance survival S(r) = exp(-E(r)) with
//
//   E(r) = 2 pi lambda_p int_0^inf (1 - exp(-m_bar (1 - Q1(v/s, r/s)))) v dv.
//
// The nearest-neighbour CDFs multiply S(r) by the probability that the
// reference point's own cluster leaves b(o, r) empty; that factor is an
// integral over the Rayleigh-distributed distance V0 from the reference point
// to its cluster centre.
// ---------------------------------------------------------------------------

/// E(r) above; the contact CDF is 1 - exp(-E(r)).
double contact_exponent(const TcpParams& p, double r, const QuadratureConfig& q = {});

/// Contact-distance (empty-space) CDF of the process.
Probability contact_cdf(const TcpParams& p, double r, const QuadratureConfig& q = {});

/// 1 - exp(-pi lambda_p m_bar r^2): the contact CDF of a PPP with the same
/// intensity, which upper-bounds contact_cdf.
Probability contact_cdf_bound(const TcpParams& p, double r);

/// Probability that the reference point's own cluster has a sibling inside
/// b(o, r) when the reference point is a uniformly chosen offspring (Case 1):
///   int (1 - exp(-m_bar (1 - Q1(v0/s, r/s)))) f_V0(v0) dv0.
double case1_own_cluster_hit(const TcpParams& p, double r, const QuadratureConfig& q = {});

/// Same for a uniformly chosen non-empty cluster (Case 2):
///   int (1 - case2_bracket(Q1(v0/s, r/s), m_bar)) f_V0(v0) dv0.
double case2_own_cluster_hit(const TcpParams& p, double r, const QuadratureConfig& q = {});

/// (e^{m x} - 1) / x * e^{-m} / (1 - e^{-m}) for x in [0, 1]; the removable
/// singularity at x -> 0 is replaced by its limit m / (e^m - 1) once
/// x < 1e-12. Lies in (0, 1].
double case2_bracket(double x, double m_bar);

/// Nearest-neighbour CDF, reference point uniform among all offspring.
Probability nn_case1_cdf(const TcpParams& p, double r, const QuadratureConfig& q = {});

/// Closed-form upper bound on nn_case1_cdf:
///   1 - exp(-pi lambda_p m_bar r^2) exp(-m_bar (1 - exp(-r^2 / (4 s^2)))).
Probability nn_case1_bound(const TcpParams& p, double r);

/// Nearest-neighbour CDF, reference point uniform within a uniformly chosen
/// non-empty cluster.
Probability nn_case2_cdf(const TcpParams& p, double r, const QuadratureConfig& q = {});

// ---------------------------------------------------------------------------
// Size of the reference point's own cluster
// ---------------------------------------------------------------------------

/// Size-biased Poisson PMF (l / m) m^l e^{-m} / l!, l >= 1 (Case 1).
Probability size_biased_pmf(int ell, double m_bar);

/// Zero-truncated Poisson PMF m^l e^{-m} / (l! (1 - e^{-m})), l >= 1 (Case 2).
Probability truncated_pmf(int ell, double m_bar);

// ---------------------------------------------------------------------------
// Curves
// ---------------------------------------------------------------------------

enum class CurveKind {
  Contact,
  ContactBound,
  NNCase1,
  NNCase1Bound,
  NNCase2,
  EmpiricalContact,
  EmpiricalNN1,
  EmpiricalNN2,
};

std::string_view to_string(CurveKind kind);

/// A CDF sampled on a radius grid.
struct CdfCurve {
  std::vector<double> radii;
  std::vector<double> values;
  CurveKind kind = CurveKind::Contact;

  /// Throws std::logic_error if the radii are not strictly increasing and
  /// non-negative, or the values leave [0,1] or decrease by more than
  /// `jitter` between neighbours.
  void validate(double jitter = 1e-12) const;
};

/// The five analytic curves on a common grid.
struct CurveSet {
  CdfCurve contact;
  CdfCurve contact_bound;
  CdfCurve nn1;
  CdfCurve nn1_bound;
  CdfCurve nn2;

  const std::vector<double>& radii() const { return contact.radii; }

  /// Per-curve validate() plus the dominance chain
  /// contact <= nn2 <= nn1 <= nn1_bound and contact <= contact_bound.
  void validate(double jitter = 1e-12) const;
};

/// `points` radii uniformly spaced on [0, r_max]; a single point {0} when
/// r_max == 0.
std::vector<double> uniform_grid(double r_max, int points);

/// Evaluates all curves, sharing the contact survival between the three exact
/// curves at each radius. Radii are split across `workers` threads; the result
/// does not depend on the worker count.
CurveSet evaluate_curves(const TcpParams& p, std::span<const double> radii,
                         const QuadratureConfig& q = {}, unsigned workers = 1);

/// Sup over the grid of (upper - lower).
double sup_gap(const CdfCurve& upper, const CdfCurve& lower);

}  // namespace tcpdist::model
