#include "tcpdist/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace tcpdist::quad {
namespace {

// 21-point Kronrod abscissae on [-1, 1] (non-negative half); odd entries are
// the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

// QUADPACK-style error scaling of |K21 - G10|.
Panel gauss_kronrod_21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_center = f(center);

  double result_k = f_center * kWgk[10];
  double result_g = 0.0;
  double result_abs = std::fabs(result_k);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};

  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double pair = f1[j] + f2[j];
    result_k += kWgk[j] * pair;
    result_abs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
    if (j % 2 == 1) result_g += kWg[j / 2] * pair;
  }

  const double mean = 0.5 * result_k;
  double result_asc = kWgk[10] * std::fabs(f_center - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    result_asc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));
  }

  const double habs = std::fabs(half);
  result_k *= half;
  result_g *= half;
  result_abs *= habs;
  result_asc *= habs;

  double err = std::fabs(result_k - result_g);
  if (result_asc != 0.0 && err != 0.0) {
    err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (result_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * result_abs, err);
  }
  return Panel{a, b, result_k, err};
}

}  // namespace

Result integrate_panels(const Integrand& f, std::span<const double> breakpoints, double rel_tol,
                        double abs_tol, int max_intervals) {
  std::vector<double> pts(breakpoints.begin(), breakpoints.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2 || !std::is_sorted(pts.begin(), pts.end())) {
    throw std::invalid_argument("integrate_panels: need at least two increasing breakpoints");
  }

  std::priority_queue<Panel> panels;
  double total = 0.0;
  double total_err = 0.0;
  int evaluations = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Panel p = gauss_kronrod_21(f, pts[i], pts[i + 1]);
    evaluations += 21;
    total += p.value;
    total_err += p.error;
    panels.push(p);
  }

  while (total_err > std::max(rel_tol * std::fabs(total), abs_tol)) {
    if (static_cast<int>(panels.size()) >= max_intervals) {
      throw NumericsError("quadrature did not converge within " + std::to_string(max_intervals) +
                              " intervals (error estimate " + std::to_string(total_err) + ")",
                          total_err);
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gauss_kronrod_21(f, worst.a, mid);
    const Panel right = gauss_kronrod_21(f, mid, worst.b);
    evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  Result out;
  out.intervals = static_cast<int>(panels.size());
  out.evaluations = evaluations;
  while (!panels.empty()) {
    out.value += panels.top().value;
    out.error += panels.top().error;
    panels.pop();
  }
  return out;
}

Result integrate_semi_infinite(const Integrand& f, double r, double sigma, const QuadratureConfig& q) {
  q.validate();
  if (!(r >= 0.0) || !(sigma > 0.0)) {
    throw std::domain_error("integrate_semi_infinite: need r >= 0 and sigma > 0");
  }
  const double v_max = r + q.tail_sigmas * sigma;
  std::vector<double> pts{0.0};
  for (double p : {r - 4.0 * sigma, r, r + 4.0 * sigma}) {
    if (p > 0.0 && p < v_max) pts.push_back(p);
  }
  pts.push_back(v_max);
  std::sort(pts.begin(), pts.end());
  return integrate_panels(f, pts, q.rel_tol, q.abs_tol, q.max_subdivisions);
}

}  // namespace tcpdist::quad
