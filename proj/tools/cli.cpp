#include "cli.hpp"

#include "tcpdist/csv.hpp"
#include "tcpdist/model.hpp"
#include "tcpdist/parallel.hpp"
#include "tcpdist/pgf.hpp"
#include "tcpdist/stats.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <thread>

namespace tcpdist::cli {
namespace {

using csv::format_double;

double analytic_cdf(sim::SampleKind kind, const TcpParams& p, double r) {
  switch (kind) {
    case sim::SampleKind::Contact: return model::contact_cdf(p, r).value();
    case sim::SampleKind::NNCase1: return model::nn_case1_cdf(p, r).value();
    case sim::SampleKind::NNCase2: return model::nn_case2_cdf(p, r).value();
  }
  throw std::logic_error("unknown sample kind");
}

double analytic_pgf(sim::SampleKind kind, const TcpParams& p, double r, double theta) {
  const pgf::PgfArgument t(theta);
  switch (kind) {
    case sim::SampleKind::Contact: return pgf::pgf_contact(p, r, t).value();
    case sim::SampleKind::NNCase1: return pgf::pgf_nn_case1(p, r, t).value();
    case sim::SampleKind::NNCase2: return pgf::pgf_nn_case2(p, r, t).value();
  }
  throw std::logic_error("unknown sample kind");
}

constexpr sim::SampleKind kKinds[] = {sim::SampleKind::Contact, sim::SampleKind::NNCase1, sim::SampleKind::NNCase2};

void print_header(std::ostream& os, const char* command, const RunConfig& cfg) {
  const auto& p = cfg.params;
  os << "tcp-dist " << command << '\n';
  os << "params lambda_p=" << format_double(p.lambda_p) << " m_bar=" << format_double(p.m_bar)
     << " sigma=" << format_double(p.sigma) << '\n';
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

std::ostream* open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return nullptr;
  file.open(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  return &file;
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  if (r_max && !(*r_max >= 0.0 && std::isfinite(*r_max))) throw std::invalid_argument("--r-max must be >= 0");
  if (grid < 1) throw std::invalid_argument("--grid must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("--alpha must lie in (0,1)");
  if (workers < 1) throw std::invalid_argument("--workers must be >= 1");
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("--theta must lie in [0,1]");
}

int cmd_curves(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto radii = model::uniform_grid(cfg.resolved_r_max(), cfg.grid);
  const model::CurveSet curves = model::evaluate_curves(cfg.params, radii, {}, cfg.workers);
  curves.validate();
  out << "r,contact,contact_bound,nn1,nn1_bound,nn2\n";
  for (std::size_t i = 0; i < radii.size(); ++i) {
    out << format_double(radii[i]) << ',' << format_double(curves.contact.values[i]) << ','
        << format_double(curves.contact_bound.values[i]) << ',' << format_double(curves.nn1.values[i]) << ','
        << format_double(curves.nn1_bound.values[i]) << ',' << format_double(curves.nn2.values[i]) << '\n';
  }
  return kOk;
}

KsCheck check_samples(const sim::SampleSet& samples, sim::SampleKind against, double alpha, unsigned workers) {
  const stats::EmpiricalCdf e(samples.distances);
  KsCheck c;
  c.ks = stats::ks_distance(e, [&](double r) { return analytic_cdf(against, samples.params, r); }, workers);
  c.epsilon = stats::dkw_epsilon(samples.distances.size(), alpha);
  c.pass = c.ks <= c.epsilon;
  return c;
}

int cmd_validate(const RunConfig& cfg, std::ostream& report, std::ostream* csv_out) {
  cfg.validate();
  if (cfg.samples < 1000) throw std::invalid_argument("validate needs --samples >= 1000");
  const double r_max = cfg.resolved_r_max();
  const sim::SimWindow w = sim::SimWindow::covering(cfg.params, r_max);

  print_header(report, "validate", cfg);
  report << "samples=" << cfg.samples << " seed=" << cfg.seed << " alpha=" << format_double(cfg.alpha)
         << " workers=" << cfg.workers << " window_radius=" << format_double(w.radius) << '\n';
  report << "dkw_epsilon=" << format_double(stats::dkw_epsilon(cfg.samples, cfg.alpha)) << '\n';

  bool all = true;
  std::vector<sim::SampleSet> sets;
  for (auto kind : kKinds) {
    sets.push_back(sim::draw_samples(kind, cfg.params, w, cfg.seed, cfg.samples, cfg.workers));
    const KsCheck c = check_samples(sets.back(), kind, cfg.alpha, cfg.workers);
    all = all && c.pass;
    report << sim::to_string(kind) << " ks=" << format_double(c.ks) << " redraws=" << sets.back().redraws << ' '
           << verdict(c.pass) << '\n';
  }
  report << "overall " << verdict(all) << '\n';

  if (csv_out) {
    const auto radii = model::uniform_grid(r_max, cfg.grid);
    const model::CurveSet curves = model::evaluate_curves(cfg.params, radii, {}, cfg.workers);
    std::vector<stats::EmpiricalCdf> ecdfs;
    for (const auto& s : sets) ecdfs.emplace_back(s.distances);
    *csv_out << "r,contact_empirical,contact,nn1_empirical,nn1,nn2_empirical,nn2\n";
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double r = radii[i];
      *csv_out << format_double(r) << ',' << format_double(ecdfs[0](r)) << ','
               << format_double(curves.contact.values[i]) << ',' << format_double(ecdfs[1](r)) << ','
               << format_double(curves.nn1.values[i]) << ',' << format_double(ecdfs[2](r)) << ','
               << format_double(curves.nn2.values[i]) << '\n';
    }
  }
  return all ? kOk : kFail;
}

int cmd_pgf_check(const RunConfig& cfg, std::ostream& report, std::ostream* csv_out) {
  cfg.validate();
  if (cfg.samples < 2) throw std::invalid_argument("pgf-check needs --samples >= 2");
  const double r_max = cfg.resolved_r_max();
  const auto radii = model::uniform_grid(r_max, cfg.grid);
  const model::CurveSet curves = model::evaluate_curves(cfg.params, radii, {}, cfg.workers);

  print_header(report, "pgf-check", cfg);
  report << "grid=" << radii.size() << " r_max=" << format_double(r_max) << " samples=" << cfg.samples
         << " seed=" << cfg.seed << " theta=" << format_double(cfg.theta) << " workers=" << cfg.workers << '\n';

  constexpr double kIdentityTol = 1e-10;
  bool all = true;
  const std::vector<double>* cdfs[] = {&curves.contact.values, &curves.nn1.values, &curves.nn2.values};
  std::vector<std::vector<double>> residuals(3, std::vector<double>(radii.size()));
  for (std::size_t k = 0; k < 3; ++k) {
    parallel_for(radii.size(), cfg.workers, [&](std::size_t i) {
      residuals[k][i] = (1.0 - analytic_pgf(kKinds[k], cfg.params, radii[i], 0.0)) - (*cdfs[k])[i];
    });
    double worst = 0.0;
    for (double d : residuals[k]) worst = std::max(worst, std::fabs(d));
    const bool pass = worst <= kIdentityTol;
    all = all && pass;
    report << sim::to_string(kKinds[k]) << " identity max_abs_residual=" << format_double(worst) << ' '
           << verdict(pass) << '\n';
  }

  // Monte Carlo probe at the grid radius closest to sigma.
  const double target = std::min(cfg.params.sigma, r_max);
  const double probe =
      *std::min_element(radii.begin(), radii.end(),
                        [&](double a, double b) { return std::fabs(a - target) < std::fabs(b - target); });
  const sim::SimWindow w = sim::SimWindow::covering(cfg.params, probe);
  for (auto kind : kKinds) {
    const double g = analytic_pgf(kind, cfg.params, probe, cfg.theta);
    const auto mc = sim::estimate_pgf(kind, cfg.params, w, probe, cfg.theta, cfg.seed, cfg.samples, cfg.workers);
    const bool pass = std::fabs(g - mc.mean) <= 3.0 * mc.std_error;
    all = all && pass;
    report << sim::to_string(kind) << " monte_carlo r=" << format_double(probe) << " pgf=" << format_double(g)
           << " estimate=" << format_double(mc.mean) << " std_error=" << format_double(mc.std_error) << ' '
           << verdict(pass) << '\n';
  }
  report << "overall " << verdict(all) << '\n';

  if (csv_out) {
    *csv_out << "r,contact_residual,nn1_residual,nn2_residual\n";
    for (std::size_t i = 0; i < radii.size(); ++i) {
      *csv_out << format_double(radii[i]) << ',' << format_double(residuals[0][i]) << ','
               << format_double(residuals[1][i]) << ',' << format_double(residuals[2][i]) << '\n';
    }
  }
  return all ? kOk : kFail;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contact and nearest-neighbour distance distributions of the Thomas cluster process", "tcp-dist"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  RunConfig cfg;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  double r_max = -1.0;

  app.add_option("--lambda-p", cfg.params.lambda_p, "parent intensity")->capture_default_str();
  app.add_option("--m-bar", cfg.params.m_bar, "mean offspring per cluster")->capture_default_str();
  app.add_option("--sigma", cfg.params.sigma, "offspring scatter standard deviation")->capture_default_str();
  auto* r_max_opt = app.add_option("--r-max", r_max, "largest radius (default 4/sqrt(pi lambda_p m_bar))");
  app.add_option("--grid", cfg.grid, "number of grid radii")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Monte Carlo samples per case")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--alpha", cfg.alpha, "significance level")->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker threads")->envname("TCP_DIST_WORKERS")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "CSV output path");

  auto* curves = app.add_subcommand("curves", "write analytic CDFs and bounds as CSV")->fallthrough();
  auto* validate = app.add_subcommand("validate", "compare simulated distances with the analytic CDFs")->fallthrough();
  auto* pgf_check = app.add_subcommand("pgf-check", "cross-check the PGFs against the CDFs and simulation")->fallthrough();
  pgf_check->add_option("--theta", cfg.theta, "PGF argument for the Monte Carlo check")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (r_max_opt->count() > 0) cfg.r_max = r_max;

  try {
    cfg.validate();
  } catch (const std::exception& e) {
    err << "tcp-dist: " << e.what() << '\n';
    return kUsage;
  }

  try {
    std::ofstream file;
    if (curves->parsed()) {
      std::ostream* target = open_out(cfg.out, file);
      return cmd_curves(cfg, target ? *target : out);
    }
    if (validate->parsed()) {
      if (cfg.samples < 1000) {
        err << "tcp-dist: validate needs --samples >= 1000\n";
        return kUsage;
      }
      return cmd_validate(cfg, out, open_out(cfg.out, file));
    }
    if (pgf_check->parsed()) {
      if (cfg.samples < 2) {
        err << "tcp-dist: pgf-check needs --samples >= 2\n";
        return kUsage;
      }
      return cmd_pgf_check(cfg, out, open_out(cfg.out, file));
    }
  } catch (const NumericsError& e) {
    err << "tcp-dist: numerics error: " << e.what() << " (achieved error " << e.achieved_error() << ")\n";
    return kNumerics;
  } catch (const std::logic_error& e) {
    err << "tcp-dist: invariant violated: " << e.what() << '\n';
    return kNumerics;
  } catch (const std::exception& e) {
    err << "tcp-dist: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}

}  // namespace tcpdist::cli
