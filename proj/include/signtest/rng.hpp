#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>

namespace signtest {

// SplitMix64 step (Vigna's public-domain reference). Used both as a key
// mixer for stream derivation and to expand a key into generator state.
inline std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Splittable random stream: xoshiro256++ seeded from a SplitMix64-derived
/// key. A stream is fully determined by (seed, tag chain), so substreams can
/// be handed to workers in any order and results do not depend on scheduling.
/// Streams are value types; never share one instance across threads.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) : key_(mix(seed)) { reseed(); }

  RngStream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags)
      : key_(mix(seed)) {
    for (std::uint64_t t : tags) key_ = mix(key_ ^ mix(t));
    reseed();
  }

  /// Derive an independent substream. Depends only on the parent's identity,
  /// not on how much the parent has been consumed.
  [[nodiscard]] RngStream child(std::uint64_t tag) const {
    return RngStream(from_key{}, mix(key_ ^ mix(tag)));
  }

  /// Stream identity (the derivation key); distinct tag chains give distinct
  /// ids with overwhelming probability. Exposed for collision tests.
  [[nodiscard]] std::uint64_t stream_id() const noexcept { return key_; }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // UniformRandomBitGenerator interface.
  std::uint64_t operator()() noexcept { return next_u64(); }
  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return double(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Marsaglia's polar method (one spare cached).
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  /// Random sign, +1 or -1 with probability 1/2 each.
  double rademacher() noexcept { return (next_u64() >> 63) ? 1.0 : -1.0; }

  /// Gamma(shape, scale) via Marsaglia-Tsang squeeze (boosted for shape < 1).
  double gamma_draw(double shape, double scale) {
    if (shape <= 0.0 || scale <= 0.0)
      throw std::domain_error("gamma_draw: shape and scale must be positive");
    if (shape < 1.0) {
      double u;
      do {
        u = uniform01();
      } while (u == 0.0);
      return gamma_draw(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
        return scale * d * v;
    }
  }

  /// Chi-square with df > 0. Small integer df is realized as a sum of
  /// squared normals; anything else goes through Gamma(df/2, 2).
  double chi_square(double df) {
    if (df <= 0.0) throw std::domain_error("chi_square: df must be positive");
    const double rounded = std::nearbyint(df);
    if (rounded == df && df <= 32.0) {
      double acc = 0.0;
      for (int i = 0; i < int(rounded); ++i) {
        const double z = normal();
        acc += z * z;
      }
      return acc;
    }
    return gamma_draw(0.5 * df, 2.0);
  }

 private:
  struct from_key {};
  RngStream(from_key, std::uint64_t key) : key_(key) { reseed(); }

  static std::uint64_t mix(std::uint64_t x) noexcept {
    std::uint64_t s = x;
    return splitmix64_next(s);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  void reseed() noexcept {
    std::uint64_t t = key_;
    for (auto& w : s_) w = splitmix64_next(t);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // xoshiro forbids all-zero
    has_spare_ = false;
    spare_ = 0.0;
  }

  std::uint64_t key_;
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace signtest
