#include <doctest.h>

#include "tcpdist/quadrature.hpp"
#include "tcpdist/special_functions.hpp"

#include <array>
#include <cmath>

using namespace tcpdist;

TEST_CASE("Gauss-Kronrod panel integrates polynomials exactly") {
  const std::array<double, 2> unit{0.0, 1.0};
  for (int deg : {0, 1, 5, 12, 19}) {
    CAPTURE(deg);
    const auto res = quad::integrate_panels([deg](double x) { return std::pow(x, deg); }, unit, 1e-12, 1e-300, 1);
    CHECK(res.value == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-14));
    CHECK(res.intervals == 1);
  }
}

TEST_CASE("semi-infinite integral of the Rayleigh density") {
  for (double sigma : {0.5, 1.0, 60.0}) {
    const auto res = quad::integrate_semi_infinite([&](double v) { return special::rayleigh_pdf(v, sigma); }, 0.0,
                                                   sigma, QuadratureConfig{});
    CHECK(std::fabs(res.value - 1.0) <= 1e-9);
    CHECK(res.error <= std::max(1e-9 * std::fabs(res.value), 1e-12));
  }
}

TEST_CASE("semi-infinite integral of v exp(-v)") {
  // scale hint 3 puts the truncation at 36, where the tail is 37 e^{-36}
  const auto res = quad::integrate_semi_infinite([](double v) { return v * std::exp(-v); }, 0.0, 3.0, QuadratureConfig{});
  CHECK(std::fabs(res.value - 1.0) <= 1e-9);
}

TEST_CASE("breakpoints near r resolve a sharp transition") {
  // smoothed step at v = 100 of width 0.05
  const double r = 100.0;
  const double s = 0.05;
  const auto f = [&](double v) { return 0.5 * std::erfc((v - r) / s) * v; };
  const auto res = quad::integrate_semi_infinite(f, r, s, QuadratureConfig{});
  // by parts: half the second moment of N(r, s^2/2), i.e. r^2/2 + s^2/4
  CHECK(res.value == doctest::Approx(r * r / 2 + s * s / 4).epsilon(1e-10));
}

TEST_CASE("non-convergence reports the achieved estimate") {
  const std::array<double, 2> range{0.0, 1.0};
  try {
    (void)quad::integrate_panels([](double x) { return std::sin(2000.0 * x) + 1.0 / std::sqrt(x + 1e-12); }, range,
                                 1e-12, 1e-15, 4);
    FAIL("expected NumericsError");
  } catch (const NumericsError& e) {
    CHECK(e.achieved_error() > 0.0);
  }
}

TEST_CASE("configuration validation") {
  QuadratureConfig q;
  q.tail_sigmas = 5.0;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  q = QuadratureConfig{};
  q.rel_tol = 0.0;
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
  const std::array<double, 1> one{0.0};
  CHECK_THROWS_AS(quad::integrate_panels([](double) { return 1.0; }, one, 1e-9, 1e-12, 10), std::invalid_argument);
}
