#include "tcpdist/stats.hpp"

#include "tcpdist/parallel.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcpdist::stats {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw std::invalid_argument("empirical CDF of an empty sample");
  if (std::any_of(sorted_.begin(), sorted_.end(), [](double x) { return std::isnan(x); })) {
    throw std::invalid_argument("empirical CDF sample contains NaN");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

EmpiricalCdf::EmpiricalCdf(std::span<const double> samples)
    : EmpiricalCdf(std::vector<double>(samples.begin(), samples.end())) {}

double EmpiricalCdf::operator()(double r) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), r);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

EmpiricalCdf empirical_cdf(std::span<const double> samples) { return EmpiricalCdf(samples); }

namespace {

// Deviation at sorted index i (0-based): the step goes from i/n to (i+1)/n.
double deviation(double f, std::size_t i, double n) {
  return std::max(f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f);
}

}  // namespace

double ks_distance(const EmpiricalCdf& e, const CdfFunction& f, unsigned workers) {
  const auto& x = e.sorted_samples();
  const std::size_t n = x.size();
  const double nn = static_cast<double>(n);

  // First level: every `step`-th sample plus the last one.
  const std::size_t step = std::max<std::size_t>(1, std::min<std::size_t>(128, n / 64));
  std::vector<std::size_t> anchors;
  for (std::size_t i = 0; i < n; i += step) anchors.push_back(i);
  if (anchors.back() != n - 1) anchors.push_back(n - 1);
  std::vector<double> anchor_f(anchors.size());
  parallel_for(anchors.size(), workers, [&](std::size_t k) { anchor_f[k] = f(x[anchors[k]]); });

  double best = 0.0;
  for (std::size_t k = 0; k < anchors.size(); ++k) best = std::max(best, deviation(anchor_f[k], anchors[k], nn));

  struct Bracket {
    std::size_t lo, hi;
    double f_lo, f_hi;
  };
  std::vector<Bracket> stack;
  for (std::size_t k = 0; k + 1 < anchors.size(); ++k) {
    if (anchors[k + 1] - anchors[k] >= 2) stack.push_back({anchors[k], anchors[k + 1], anchor_f[k], anchor_f[k + 1]});
  }
  while (!stack.empty()) {
    const Bracket b = stack.back();
    stack.pop_back();
    // interior i in (lo, hi) has F(x_i) in [f_lo, f_hi]
    const double bound = std::max(b.f_hi - static_cast<double>(b.lo + 1) / nn, static_cast<double>(b.hi) / nn - b.f_lo);
    if (bound <= best) continue;
    const std::size_t mid = b.lo + (b.hi - b.lo) / 2;
    const double f_mid = f(x[mid]);
    best = std::max(best, deviation(f_mid, mid, nn));
    if (mid - b.lo >= 2) stack.push_back({b.lo, mid, b.f_lo, f_mid});
    if (b.hi - mid >= 2) stack.push_back({mid, b.hi, f_mid, b.f_hi});
  }
  return best;
}

double ks_distance_exhaustive(const EmpiricalCdf& e, const CdfFunction& f) {
  const auto& x = e.sorted_samples();
  const double nn = static_cast<double>(x.size());
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) best = std::max(best, deviation(f(x[i]), i, nn));
  return best;
}

double ks_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b) {
  const auto& xa = a.sorted_samples();
  const auto& xb = b.sorted_samples();
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double best = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double v = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] <= v) ++i;
    while (j < xb.size() && xb[j] <= v) ++j;
    best = std::max(best, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha) {
  if (n == 0 || m == 0) throw std::invalid_argument("two-sample KS needs non-empty samples");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
  const double c = std::sqrt(-0.5 * std::log(0.5 * alpha));
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  return c * std::sqrt((dn + dm) / (dn * dm));
}

double dkw_epsilon(std::size_t n, double alpha) {
  if (n == 0) throw std::invalid_argument("dkw_epsilon needs n >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

ChiSquareResult chi_square_pmf_test(std::span<const std::uint64_t> observed, int first_value,
                                    const std::function<double(int)>& pmf, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
  double total = 0.0;
  for (auto c : observed) total += static_cast<double>(c);
  if (total <= 0.0) throw std::invalid_argument("chi-square test on zero observations");

  std::vector<double> obs;
  std::vector<double> expd;
  double mass = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double p = pmf(first_value + static_cast<int>(i));
    mass += p;
    obs.push_back(static_cast<double>(observed[i]));
    expd.push_back(total * p);
  }
  const double tail = std::max(0.0, 1.0 - mass);
  if (tail * total > 0.0) {
    obs.push_back(0.0);
    expd.push_back(total * tail);
  }

  constexpr double kMinExpected = 5.0;
  std::vector<double> pooled_obs;
  std::vector<double> pooled_exp;
  double acc_o = 0.0;
  double acc_e = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    acc_o += obs[i];
    acc_e += expd[i];
    if (acc_e >= kMinExpected) {
      pooled_obs.push_back(acc_o);
      pooled_exp.push_back(acc_e);
      acc_o = acc_e = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (pooled_exp.empty()) {
      pooled_obs.push_back(acc_o);
      pooled_exp.push_back(acc_e);
    } else {
      pooled_obs.back() += acc_o;
      pooled_exp.back() += acc_e;
    }
  }
  if (pooled_exp.size() < 2) throw std::invalid_argument("chi-square test needs at least two bins after pooling");

  ChiSquareResult res;
  res.bins = static_cast<int>(pooled_exp.size());
  res.degrees_of_freedom = res.bins - 1;
  for (std::size_t i = 0; i < pooled_exp.size(); ++i) {
    const double d = pooled_obs[i] - pooled_exp[i];
    res.statistic += d * d / pooled_exp[i];
  }
  const boost::math::chi_squared dist(res.degrees_of_freedom);
  res.critical = boost::math::quantile(dist, 1.0 - alpha);
  res.pass = res.statistic <= res.critical;
  return res;
}

std::vector<std::uint64_t> tally(std::span<const std::uint32_t> values) {
  std::vector<std::uint64_t> counts;
  for (auto v : values) {
    if (v >= counts.size()) counts.resize(static_cast<std::size_t>(v) + 1, 0);
    ++counts[v];
  }
  return counts;
}

}  // namespace tcpdist::stats
