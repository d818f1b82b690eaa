#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace tcpdist::stats {

/// Right-continuous step function (#samples <= r) / n.
class EmpiricalCdf {
 public:
  /// Throws std::invalid_argument for an empty sample or a NaN.
  explicit EmpiricalCdf(std::vector<double> samples);
  explicit EmpiricalCdf(std::span<const double> samples);

  double operator()(double r) const;
  std::size_t size() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted_samples() const noexcept { return sorted_; }

 private:
  std::vector<double> sorted_;
};

/// Empirical CDF of a sample; rejects empty input.
EmpiricalCdf empirical_cdf(std::span<const double> samples);

using CdfFunction = std::function<double(double)>;

/// Kolmogorov-Smirnov distance sup_i max(|F(x_i) - i/n|, |F(x_i) - (i-1)/n|)
/// between the empirical CDF and a continuous non-decreasing F.
///
/// The supremum is exact, but F is only called where it can matter: values of
/// F at bracketing samples bound F on every sample between them, and brackets
/// whose bound cannot beat the current maximum are skipped. F must be
/// monotone on [min sample, max sample]. The first-level bracket endpoints are
/// evaluated on `workers` threads.
double ks_distance(const EmpiricalCdf& e, const CdfFunction& f, unsigned workers = 1);

/// Same supremum, evaluating F at every sample (reference implementation).
double ks_distance_exhaustive(const EmpiricalCdf& e, const CdfFunction& f);

/// Two-sample KS statistic sup_r |F_a(r) - F_b(r)|.
double ks_two_sample(const EmpiricalCdf& a, const EmpiricalCdf& b);

/// Asymptotic two-sample KS critical value c(alpha) sqrt((n + m) / (n m)),
/// c(alpha) = sqrt(-ln(alpha / 2) / 2).
double ks_two_sample_critical(std::size_t n, std::size_t m, double alpha);

/// DKW band half-width sqrt(ln(2 / alpha) / (2 n)). Requires n >= 1 and
/// alpha in (0, 1).
double dkw_epsilon(std::size_t n, double alpha);

struct ChiSquareResult {
  bool pass = false;
  double statistic = 0.0;
  double critical = 0.0;
  int degrees_of_freedom = 0;
  int bins = 0;  ///< after pooling
};

/// Pearson goodness-of-fit of observed counts against a PMF.
///
/// observed[i] counts the value first_value + i. The PMF is summed over the
/// observed range and its remaining mass forms an upper tail bin. Adjacent
/// bins are pooled until every expected count is >= 5 (the upper tail is
/// folded into its neighbour if still short). Fewer than two bins after
/// pooling throws std::invalid_argument. Passes iff the statistic is below the
/// chi-square (1 - alpha) quantile with bins - 1 degrees of freedom.
ChiSquareResult chi_square_pmf_test(std::span<const std::uint64_t> observed, int first_value,
                                    const std::function<double(int)>& pmf, double alpha);

/// Histogram of non-negative integer values: counts[v] for v = 0..max.
std::vector<std::uint64_t> tally(std::span<const std::uint32_t> values);

}  // namespace tcpdist::stats
