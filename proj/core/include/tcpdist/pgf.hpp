#pragma once

#include "tcpdist/params.hpp"
#include "tcpdist/probability.hpp"

namespace tcpdist::pgf {

/// PGF argument theta, restricted to [0, 1]; anything else throws
/// std::domain_error.
class PgfArgument {
 public:
  explicit PgfArgument(double theta);
  double value() const noexcept { return theta_; }

 private:
  double theta_;
};

/// E[theta^N], N the number of process points in b(o, r) seen from a
/// location that is not a point of the process.
Probability pgf_contact(const TcpParams& p, double r, PgfArgument theta, const QuadratureConfig& q = {});

/// Q1(v0/s, r/s) + theta (1 - Q1(v0/s, r/s)): the PGF of the indicator that one
/// sibling, scattered around a centre at distance v0, lands in b(o, r).
Probability rho(PgfArgument theta, double v0, double r, double sigma);

/// E[theta^N] under the Case-1 Palm distribution (reference point, not
/// counted, is a uniformly chosen offspring).
Probability pgf_nn_case1(const TcpParams& p, double r, PgfArgument theta, const QuadratureConfig& q = {});

/// E[theta^N] under the Case-2 Palm distribution (reference point chosen
/// within a uniformly chosen non-empty cluster).
Probability pgf_nn_case2(const TcpParams& p, double r, PgfArgument theta, const QuadratureConfig& q = {});

}  // namespace tcpdist::pgf
