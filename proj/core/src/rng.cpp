#include "tcpdist/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tcpdist::rng {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53;
constexpr std::uint32_t kM1 = 0xCD9E8D57;
constexpr std::uint32_t kW0 = 0x9E3779B9;
constexpr std::uint32_t kW1 = 0xBB67AE85;

constexpr double kInversionLimit = 64.0;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t poisson_inversion(CounterRng& g, double mean) {
  const double u = g.uniform();
  double p = std::exp(-mean);
  double cdf = p;
  std::uint64_t k = 0;
  while (u > cdf) {
    ++k;
    p *= mean / static_cast<double>(k);
    if (p == 0.0) break;
    cdf += p;
  }
  return k;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kW0;
      key[1] += kW1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

CounterRng::CounterRng(const StreamKey& k) noexcept {
  key_ = {static_cast<std::uint32_t>(k.seed), static_cast<std::uint32_t>(k.seed >> 32)};
  const std::uint64_t h1 = splitmix64(k.sample ^ splitmix64((static_cast<std::uint64_t>(k.purpose) << 32) | k.attempt));
  const std::uint64_t h2 = splitmix64(h1 ^ splitmix64(k.sub + 0x632BE59BD9B4E019ull));
  stream_ = {static_cast<std::uint32_t>(h1), static_cast<std::uint32_t>(h1 >> 32), static_cast<std::uint32_t>(h2)};
}

void CounterRng::refill() noexcept {
  buffer_ = philox4x32_10({block_++, stream_[0], stream_[1], stream_[2]}, key_);
  used_ = 0;
}

CounterRng::result_type CounterRng::operator()() noexcept {
  if (used_ == 4) refill();
  return buffer_[used_++];
}

std::uint64_t CounterRng::next_u64() noexcept {
  const std::uint64_t hi = (*this)();
  return (hi << 32) | (*this)();
}

double CounterRng::uniform() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::uint64_t CounterRng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::domain_error("poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  if (mean <= kInversionLimit) return poisson_inversion(*this, mean);
  const auto parts = static_cast<std::uint64_t>(std::ceil(mean / kInversionLimit));
  const double part_mean = mean / static_cast<double>(parts);
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < parts; ++i) total += poisson_inversion(*this, part_mean);
  return total;
}

std::uint64_t CounterRng::zero_truncated_poisson(double mean) {
  if (!(mean > 0.0)) throw std::domain_error("zero-truncated poisson needs mean > 0");
  for (;;) {
    const std::uint64_t k = poisson(mean);
    if (k > 0) return k;
  }
}

}  // namespace tcpdist::rng
