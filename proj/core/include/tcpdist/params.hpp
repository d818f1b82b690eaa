#pragma once

#include <stdexcept>
#include <string>

namespace tcpdist {

/// Thomas cluster process parameters.
struct TcpParams {
  double lambda_p = 5e-5;  ///< parent points per unit area
  double m_bar = 3.0;      ///< mean offspring per cluster
  double sigma = 60.0;     ///< per-axis std-dev of offspring displacement

  /// Throws std::invalid_argument unless every field is finite and > 0.
  void validate() const;

  /// Intensity of the offspring process, lambda_p * m_bar.
  double intensity() const noexcept { return lambda_p * m_bar; }

  /// Radius at which the homogeneous-PPP contact bound reaches 1 - e^{-16}.
  double default_r_max() const;

  friend bool operator==(const TcpParams&, const TcpParams&) = default;
};

/// Truncation and tolerance policy for the integrals over [0, inf).
///
/// Outer integrals are truncated at v_max = r + tail_sigmas * sigma.
struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double tail_sigmas = 12.0;
  int max_subdivisions = 200;

  void validate() const;
};

/// A quadrature or series failed to reach its tolerance.
class NumericsError : public std::runtime_error {
 public:
  NumericsError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace tcpdist
