#pragma once

#include "tcpdist/params.hpp"

#include <functional>
#include <span>

namespace tcpdist::quad {

using Integrand = std::function<double(double)>;

struct Result {
  double value = 0.0;
  double error = 0.0;   ///< estimated absolute error
  int intervals = 0;    ///< number of panels at termination
  int evaluations = 0;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature over the panels defined
/// by the sorted `breakpoints` (at least two, strictly increasing after
/// duplicates are dropped). The panel with the largest error estimate is
/// bisected until the summed estimate is <= max(rel_tol * |I|, abs_tol).
///
/// Throws NumericsError, carrying the achieved estimate, when the panel count
/// would exceed max_intervals.
Result integrate_panels(const Integrand& f, std::span<const double> breakpoints, double rel_tol,
                        double abs_tol, int max_intervals);

/// Integral of f over [0, inf), truncated at v_max = r + q.tail_sigmas * sigma.
///
/// The initial panels are {0, r - 4 sigma, r, r + 4 sigma, v_max} clipped to
/// [0, v_max]: the integrands of this library concentrate their structure
/// near v = r. The caller guarantees f is negligible beyond v_max.
Result integrate_semi_infinite(const Integrand& f, double r, double sigma, const QuadratureConfig& q);

}  // namespace tcpdist::quad
