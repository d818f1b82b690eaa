#pragma once

#include "tcpdist/params.hpp"
#include "tcpdist/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace tcpdist::sim {

struct Point {
  double x = 0.0;
  double y = 0.0;

  double norm() const noexcept;
};

struct Cluster {
  Point parent;
  std::vector<Point> offspring;
};

/// A realization of the process: parents with their offspring. Only
/// offspring are points of the process.
struct PointPattern {
  std::vector<Cluster> clusters;

  std::size_t point_count() const noexcept;
};

/// Disk of parents centred at the origin.
struct SimWindow {
  double radius = 0.0;

  /// Radius beyond which every distance sampled here is exceeded with
  /// probability below `tail` for any sigma:
  ///   sqrt(ln(1/tail) / (pi lambda_p (1 - e^{-m_bar}))).
  /// The contact survival never exceeds exp(-pi lambda_p (1 - e^{-m}) r^2),
  /// and the nearest-neighbour survivals never exceed the contact one.
  static double coverage_radius(const TcpParams& p, double tail = 1e-9);

  /// radius = max(r_study, coverage_radius(p)) + margin_sigmas * sigma.
  static SimWindow covering(const TcpParams& p, double r_study, double margin_sigmas = 8.0);

  /// Window for the naive constructions, whose reference point comes from a
  /// cluster with parent in the inner half disk:
  ///   radius = 2 (max(r_study, coverage_radius(p)) + (margin_sigmas + 6) sigma).
  static SimWindow naive_covering(const TcpParams& p, double r_study, double margin_sigmas = 8.0);
};

/// Process realization on the window. Parents are generated annulus by
/// annulus (width max(sigma, lambda_p^{-1/2})) with one stream per annulus
/// and per parent, so the realization on a smaller window is exactly the
/// restriction of the realization on a larger one drawn from the same key.
PointPattern sample_tcp(const TcpParams& p, const SimWindow& w, const rng::StreamKey& key);

/// Number of offspring within distance r of the origin.
std::size_t count_in_ball(const PointPattern& pattern, double r);

enum class SampleKind { Contact, NNCase1, NNCase2 };
enum class NnCase { Case1, Case2 };

std::string_view to_string(SampleKind kind);
SampleKind sample_kind_from_string(std::string_view name);

/// One distance draw with diagnostics.
struct Draw {
  double distance = 0.0;
  std::uint32_t cluster_size = 0;  ///< size of the reference point's own cluster (0 for contact)
  std::uint32_t redraws = 0;       ///< degenerate realizations discarded
};

/// Distance from the origin to the nearest offspring. Realizations without
/// any offspring in the window are redrawn.
Draw contact_distance_sample(const TcpParams& p, const SimWindow& w, const rng::StreamKey& key);

/// Palm construction: the reference point sits at the origin, its cluster
/// centre at Rayleigh(sigma) distance in a uniform direction, with
/// Poisson(m_bar) siblings (Case 1) or zero-truncated-Poisson(m_bar) - 1
/// siblings (Case 2), superposed with an independent process on `w`.
Draw nn_distance_sample(NnCase which, const TcpParams& p, const SimWindow& w, const rng::StreamKey& key);

Draw nn_distance_sample_case1(const TcpParams& p, const SimWindow& w, const rng::StreamKey& key);
Draw nn_distance_sample_case2(const TcpParams& p, const SimWindow& w, const rng::StreamKey& key);

/// Direct construction: draw a whole realization, pick a reference offspring
/// among clusters with parents in the inner half disk (uniform over offspring
/// for Case 1; uniform non-empty cluster then uniform offspring for Case 2)
/// and return its distance to the nearest other offspring.
Draw nn_distance_naive(NnCase which, const TcpParams& p, const SimWindow& w, const rng::StreamKey& key);

/// Count in b(o, r) under the contact (kind == Contact) or Palm distribution,
/// the reference point itself excluded. No conditioning.
std::size_t count_sample(SampleKind kind, const TcpParams& p, const SimWindow& w, double r,
                         const rng::StreamKey& key);

/// Monte Carlo distance samples with provenance.
struct SampleSet {
  std::vector<double> distances;
  std::vector<std::uint32_t> cluster_sizes;  ///< empty for Contact
  SampleKind kind = SampleKind::Contact;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  TcpParams params;
  unsigned workers = 1;
  std::uint64_t redraws = 0;
};

/// How nearest-neighbour samples are constructed.
enum class Construction { Palm, Naive };

/// n independent draws; draw i uses the streams keyed by (seed, i) only, so
/// the result is bit-identical for any worker count.
SampleSet draw_samples(SampleKind kind, const TcpParams& p, const SimWindow& w, std::uint64_t seed,
                       std::size_t n, unsigned workers = 1, Construction construction = Construction::Palm);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of E[theta^N] with N from count_sample.
MeanEstimate estimate_pgf(SampleKind kind, const TcpParams& p, const SimWindow& w, double r, double theta,
                          std::uint64_t seed, std::size_t n, unsigned workers = 1);

/// CSV: a provenance header row `kind,seed,n,lambda_p,m_bar,sigma`, its value
/// row, then a `distance` header and one distance per line.
void write_csv(const SampleSet& s, std::ostream& out);
SampleSet read_csv(std::istream& in);

}  // namespace tcpdist::sim
