#include "tcpdist/sim.hpp"

#include "tcpdist/csv.hpp"
#include "tcpdist/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tcpdist::sim {
namespace {

enum Purpose : std::uint32_t {
  kParents = 1,
  kOffspring = 2,
  kReference = 3,
  kPick = 4,
};

constexpr std::uint32_t kMaxAttempts = 1'000'000;

void require_window(const SimWindow& w) {
  if (!(w.radius > 0.0) || !std::isfinite(w.radius)) throw std::invalid_argument("window radius must be > 0");
}

// Calls on_cluster(parent) then on_point(point) for each of its offspring.
template <typename OnCluster, typename OnPoint>
void generate_tcp(const TcpParams& p, const SimWindow& w, const rng::StreamKey& key, OnCluster&& on_cluster,
                  OnPoint&& on_point) {
  // Annulus width depends on the parameters only, never on the window.
  const double width = std::max(p.sigma, 1.0 / std::sqrt(p.lambda_p));
  const auto annuli = static_cast<std::uint64_t>(std::ceil(w.radius / width));
  const double r2_max = w.radius * w.radius;
  for (std::uint64_t k = 0; k < annuli; ++k) {
    const double inner2 = (k * width) * (k * width);
    const double outer2 = ((k + 1) * width) * ((k + 1) * width);
    rng::CounterRng g(key.with(kParents, k));
    const std::uint64_t count = g.poisson(p.lambda_p * std::numbers::pi * (outer2 - inner2));
    for (std::uint64_t j = 0; j < count; ++j) {
      const double rad2 = inner2 + g.uniform() * (outer2 - inner2);
      const double angle = 2.0 * std::numbers::pi * g.uniform();
      if (rad2 > r2_max) continue;
      const double rad = std::sqrt(rad2);
      const Point parent{rad * std::cos(angle), rad * std::sin(angle)};
      on_cluster(parent);
      rng::CounterRng h(key.with(kOffspring, (k << 32) | j));
      const std::uint64_t kids = h.poisson(p.m_bar);
      for (std::uint64_t c = 0; c < kids; ++c) {
        const double dx = p.sigma * h.normal();
        const double dy = p.sigma * h.normal();
        on_point(Point{parent.x + dx, parent.y + dy});
      }
    }
  }
}

struct ReferenceCluster {
  std::uint32_t size = 0;  // including the reference point
  std::vector<Point> siblings;
};

ReferenceCluster palm_reference(NnCase which, const TcpParams& p, const rng::StreamKey& key) {
  rng::CounterRng g(key.with(kReference, 0));
  const double v0 = p.sigma * std::sqrt(-2.0 * std::log(g.uniform()));
  const double angle = 2.0 * std::numbers::pi * g.uniform();
  const Point centre{v0 * std::cos(angle), v0 * std::sin(angle)};
  const std::uint64_t size = which == NnCase::Case1 ? g.poisson(p.m_bar) + 1 : g.zero_truncated_poisson(p.m_bar);
  ReferenceCluster ref;
  ref.size = static_cast<std::uint32_t>(size);
  ref.siblings.reserve(size - 1);
  for (std::uint64_t i = 1; i < size; ++i) {
    const double dx = p.sigma * g.normal();
    const double dy = p.sigma * g.normal();
    ref.siblings.push_back(Point{centre.x + dx, centre.y + dy});
  }
  return ref;
}

NnCase nn_case_of(SampleKind kind) {
  if (kind == SampleKind::NNCase1) return NnCase::Case1;
  if (kind == SampleKind::NNCase2) return NnCase::Case2;
  throw std::invalid_argument("not a nearest-neighbour sample kind");
}

}  // namespace

double Point::norm() const noexcept { return std::hypot(x, y); }

std::size_t PointPattern::point_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : clusters) n += c.offspring.size();
  return n;
}

double SimWindow::coverage_radius(const TcpParams& p, double tail) {
  p.validate();
  if (!(tail > 0.0 && tail < 1.0)) throw std::invalid_argument("coverage tail must lie in (0,1)");
  return std::sqrt(-std::log(tail) / (std::numbers::pi * p.lambda_p * -std::expm1(-p.m_bar)));
}

SimWindow SimWindow::covering(const TcpParams& p, double r_study, double margin_sigmas) {
  if (!(r_study >= 0.0) || !(margin_sigmas > 0.0)) throw std::invalid_argument("bad window request");
  return SimWindow{std::max(r_study, coverage_radius(p)) + margin_sigmas * p.sigma};
}

SimWindow SimWindow::naive_covering(const TcpParams& p, double r_study, double margin_sigmas) {
  if (!(r_study >= 0.0) || !(margin_sigmas > 0.0)) throw std::invalid_argument("bad window request");
  return SimWindow{2.0 * (std::max(r_study, coverage_radius(p)) + (margin_sigmas + 6.0) * p.sigma)};
}

PointPattern sample_tcp(const TcpParams& p, const SimWindow& w, const rng::StreamKey& key) {
  p.validate();
  require_window(w);
  PointPattern pattern;
  generate_tcp(
      p, w, key, [&](const Point& parent) { pattern.clusters.push_back(Cluster{parent, {}}); },
      [&](const Point& pt) { pattern.clusters.back().offspring.push_back(pt); });
  return pattern;
}

std::size_t count_in_ball(const PointPattern& pattern, double r) {
  std::size_t n = 0;
  for (const auto& c : pattern.clusters) {
    for (const auto& pt : c.offspring) {
      if (pt.norm() <= r) ++n;
    }
  }
  return n;
}

std::string_view to_string(SampleKind kind) {
  switch (kind) {
    case SampleKind::Contact: return "contact";
    case SampleKind::NNCase1: return "nn1";
    case SampleKind::NNCase2: return "nn2";
  }
  return "unknown";
}

SampleKind sample_kind_from_string(std::string_view name) {
  if (name == "contact") return SampleKind::Contact;
  if (name == "nn1") return SampleKind::NNCase1;
  if (name == "nn2") return SampleKind::NNCase2;
  throw std::invalid_argument("unknown sample kind '" + std::string(name) + "'");
}

Draw contact_distance_sample(const TcpParams& p, const SimWindow& w, const rng::StreamKey& key) {
  p.validate();
  require_window(w);
  rng::StreamKey k = key;
  for (std::uint32_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    k.attempt = attempt;
    double best = std::numeric_limits<double>::infinity();
    generate_tcp(p, w, k, [](const Point&) {}, [&](const Point& pt) { best = std::min(best, pt.norm()); });
    if (std::isfinite(best)) return Draw{best, 0, attempt};
  }
  throw std::runtime_error("contact_distance_sample: window never produced a point");
}

Draw nn_distance_sample(NnCase which, const TcpParams& p, const SimWindow& w, const rng::StreamKey& key) {
  p.validate();
  require_window(w);
  rng::StreamKey k = key;
  for (std::uint32_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    k.attempt = attempt;
    const ReferenceCluster ref = palm_reference(which, p, k);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : ref.siblings) best = std::min(best, s.norm());
    generate_tcp(p, w, k, [](const Point&) {}, [&](const Point& pt) { best = std::min(best, pt.norm()); });
    if (std::isfinite(best)) return Draw{best, ref.size, attempt};
  }
  throw std::runtime_error("nn_distance_sample: no neighbour ever generated");
}

Draw nn_distance_sample_case1(const TcpParams& p, const SimWindow& w, const rng::StreamKey& key) {
  return nn_distance_sample(NnCase::Case1, p, w, key);
}

Draw nn_distance_sample_case2(const TcpParams& p, const SimWindow& w, const rng::StreamKey& key) {
  return nn_distance_sample(NnCase::Case2, p, w, key);
}

Draw nn_distance_naive(NnCase which, const TcpParams& p, const SimWindow& w, const rng::StreamKey& key) {
  p.validate();
  require_window(w);
  const double inner = 0.5 * w.radius;
  std::vector<Point> points;
  std::vector<std::uint32_t> owner;     // cluster index per point
  std::vector<std::uint32_t> first;     // first point index per cluster
  std::vector<std::uint32_t> size;      // offspring per cluster
  std::vector<bool> eligible;           // parent in the inner half disk
  rng::StreamKey k = key;
  for (std::uint32_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    k.attempt = attempt;
    points.clear();
    owner.clear();
    first.clear();
    size.clear();
    eligible.clear();
    generate_tcp(
        p, w, k,
        [&](const Point& parent) {
          first.push_back(static_cast<std::uint32_t>(points.size()));
          size.push_back(0);
          eligible.push_back(parent.norm() <= inner);
        },
        [&](const Point& pt) {
          points.push_back(pt);
          owner.push_back(static_cast<std::uint32_t>(first.size() - 1));
          ++size.back();
        });

    rng::CounterRng pick(k.with(kPick, 0));
    std::size_t ref = points.size();
    if (which == NnCase::Case1) {
      std::vector<std::uint32_t> candidates;
      for (std::uint32_t i = 0; i < points.size(); ++i) {
        if (eligible[owner[i]]) candidates.push_back(i);
      }
      if (candidates.empty()) continue;
      ref = candidates[std::min(candidates.size() - 1, static_cast<std::size_t>(pick.uniform() * candidates.size()))];
    } else {
      std::vector<std::uint32_t> clusters;
      for (std::uint32_t c = 0; c < size.size(); ++c) {
        if (eligible[c] && size[c] > 0) clusters.push_back(c);
      }
      if (clusters.empty()) continue;
      const std::uint32_t c = clusters[std::min(clusters.size() - 1, static_cast<std::size_t>(pick.uniform() * clusters.size()))];
      ref = first[c] + std::min<std::size_t>(size[c] - 1, static_cast<std::size_t>(pick.uniform() * size[c]));
    }
    if (points.size() < 2) continue;

    const Point origin = points[ref];
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i == ref) continue;
      const double dx = points[i].x - origin.x;
      const double dy = points[i].y - origin.y;
      best2 = std::min(best2, dx * dx + dy * dy);
    }
    return Draw{std::sqrt(best2), size[owner[ref]], attempt};
  }
  throw std::runtime_error("nn_distance_naive: no eligible reference point ever generated");
}

std::size_t count_sample(SampleKind kind, const TcpParams& p, const SimWindow& w, double r,
                         const rng::StreamKey& key) {
  p.validate();
  require_window(w);
  std::size_t n = 0;
  if (kind != SampleKind::Contact) {
    const ReferenceCluster ref = palm_reference(nn_case_of(kind), p, key);
    for (const auto& s : ref.siblings) n += s.norm() <= r ? 1 : 0;
  }
  generate_tcp(p, w, key, [](const Point&) {}, [&](const Point& pt) { n += pt.norm() <= r ? 1 : 0; });
  return n;
}

SampleSet draw_samples(SampleKind kind, const TcpParams& p, const SimWindow& w, std::uint64_t seed,
                       std::size_t n, unsigned workers, Construction construction) {
  p.validate();
  require_window(w);
  SampleSet s;
  s.kind = kind;
  s.seed = seed;
  s.n = n;
  s.params = p;
  s.workers = std::max(1u, workers);
  s.distances.resize(n);
  std::vector<std::uint32_t> sizes(n, 0);
  std::vector<std::uint32_t> redraws(n, 0);

  parallel_for(n, s.workers, [&](std::size_t i) {
    rng::StreamKey key;
    key.seed = seed;
    key.sample = i;
    Draw d;
    if (kind == SampleKind::Contact) {
      d = contact_distance_sample(p, w, key);
    } else if (construction == Construction::Palm) {
      d = nn_distance_sample(nn_case_of(kind), p, w, key);
    } else {
      d = nn_distance_naive(nn_case_of(kind), p, w, key);
    }
    s.distances[i] = d.distance;
    sizes[i] = d.cluster_size;
    redraws[i] = d.redraws;
  });

  for (auto r : redraws) s.redraws += r;
  if (kind != SampleKind::Contact) s.cluster_sizes = std::move(sizes);
  return s;
}

MeanEstimate estimate_pgf(SampleKind kind, const TcpParams& p, const SimWindow& w, double r, double theta,
                          std::uint64_t seed, std::size_t n, unsigned workers) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("theta must lie in [0,1]");
  if (n < 2) throw std::invalid_argument("estimate_pgf needs n >= 2");
  std::vector<double> values(n);
  parallel_for(n, std::max(1u, workers), [&](std::size_t i) {
    rng::StreamKey key;
    key.seed = seed;
    key.sample = i;
    values[i] = std::pow(theta, static_cast<double>(count_sample(kind, p, w, r, key)));
  });
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = ss / static_cast<double>(n - 1);
  return MeanEstimate{mean, std::sqrt(var / static_cast<double>(n))};
}

void write_csv(const SampleSet& s, std::ostream& out) {
  using csv::format_double;
  out << "kind,seed,n,lambda_p,m_bar,sigma\n";
  out << to_string(s.kind) << ',' << s.seed << ',' << s.n << ',' << format_double(s.params.lambda_p) << ','
      << format_double(s.params.m_bar) << ',' << format_double(s.params.sigma) << '\n';
  out << "distance\n";
  for (double d : s.distances) out << format_double(d) << '\n';
}

SampleSet read_csv(std::istream& in) {
  std::string line;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) throw std::runtime_error(std::string("sample csv: missing ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };
  next("header");
  if (line != "kind,seed,n,lambda_p,m_bar,sigma") throw std::runtime_error("sample csv: bad header");
  next("provenance row");
  const auto f = csv::split(line);
  if (f.size() != 6) throw std::runtime_error("sample csv: provenance row needs 6 fields");
  SampleSet s;
  s.kind = sample_kind_from_string(f[0]);
  s.seed = csv::parse_u64(f[1]);
  s.n = csv::parse_u64(f[2]);
  s.params = TcpParams{csv::parse_double(f[3]), csv::parse_double(f[4]), csv::parse_double(f[5])};
  next("distance header");
  if (line != "distance") throw std::runtime_error("sample csv: expected 'distance' header");
  s.distances.reserve(s.n);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    s.distances.push_back(csv::parse_double(line));
  }
  if (s.distances.size() != s.n) throw std::runtime_error("sample csv: row count does not match n");
  return s;
}

}  // namespace tcpdist::sim
