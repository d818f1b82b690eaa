#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace tcpdist::rng {

/// Philox4x32-10 block function (Salmon et al., SC'11): a keyed bijection of
/// 128-bit counters.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Identifies one independent random stream. The stream's draws depend only
/// on these fields, so any sample can be regenerated in isolation and the
/// assignment of samples to threads cannot change results.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t sample = 0;   ///< sample index within a run
  std::uint32_t purpose = 0;  ///< what the stream is used for
  std::uint32_t attempt = 0;  ///< redraw counter
  std::uint64_t sub = 0;      ///< e.g. annulus or parent index

  StreamKey with(std::uint32_t new_purpose, std::uint64_t new_sub) const noexcept {
    StreamKey k = *this;
    k.purpose = new_purpose;
    k.sub = new_sub;
    return k;
  }
};

/// Counter-based generator: block i of the stream is
/// philox(counter = {i, h0, h1, h2}, key = seed), with (h0, h1, h2) a hash of
/// the remaining StreamKey fields. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint32_t;

  explicit CounterRng(const StreamKey& key) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;
  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;
  /// Standard normal (Box-Muller; the second variate is cached).
  double normal() noexcept;
  /// Poisson(mean): inversion for mean <= 64, otherwise an exact sum of
  /// Poisson variates with means <= 64.
  std::uint64_t poisson(double mean);
  /// Poisson(mean) conditioned on being >= 1 (rejection).
  std::uint64_t zero_truncated_poisson(double mean);

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_{};
  std::array<std::uint32_t, 3> stream_{};
  std::uint32_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned used_ = 4;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace tcpdist::rng
