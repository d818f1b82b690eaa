#include "tcpdist/params.hpp"

#include <cmath>
#include <numbers>

namespace tcpdist {

void TcpParams::validate() const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(lambda_p)) throw std::invalid_argument("lambda_p must be finite and > 0");
  if (!positive(m_bar)) throw std::invalid_argument("m_bar must be finite and > 0");
  if (!positive(sigma)) throw std::invalid_argument("sigma must be finite and > 0");
}

double TcpParams::default_r_max() const {
  validate();
  return 4.0 / std::sqrt(std::numbers::pi * lambda_p * m_bar);
}

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be > 0");
  if (!(tail_sigmas >= 6.0)) throw std::invalid_argument("tail_sigmas must be >= 6");
  if (max_subdivisions < 1) throw std::invalid_argument("max_subdivisions must be >= 1");
}

}  // namespace tcpdist
