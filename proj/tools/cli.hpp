#pragma once

#include "tcpdist/params.hpp"
#include "tcpdist/sim.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace tcpdist::cli {

enum ExitCode : int {
  kOk = 0,
  kFail = 1,
  kUsage = 2,
  kNumerics = 3,
};

struct RunConfig {
  TcpParams params;
  std::optional<double> r_max;  // defaults to params.default_r_max()
  int grid = 200;
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
  double alpha = 0.01;
  unsigned workers = 1;
  std::string out;  // empty: stdout for curves, no CSV otherwise
  double theta = 0.5;

  double resolved_r_max() const { return r_max ? *r_max : params.default_r_max(); }
  /// Throws std::invalid_argument on values outside their domain.
  void validate() const;
};

int cmd_curves(const RunConfig& cfg, std::ostream& out);
int cmd_validate(const RunConfig& cfg, std::ostream& report, std::ostream* csv);
int cmd_pgf_check(const RunConfig& cfg, std::ostream& report, std::ostream* csv);

/// KS distance of `samples` against the analytic CDF of `against`, checked
/// against the DKW band at level alpha.
struct KsCheck {
  double ks = 0.0;
  double epsilon = 0.0;
  bool pass = false;
};
KsCheck check_samples(const sim::SampleSet& samples, sim::SampleKind against, double alpha, unsigned workers);

/// Parses argv and dispatches. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tcpdist::cli
