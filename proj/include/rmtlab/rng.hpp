// rmtlab - random matrix spectra, limiting laws and Wasserstein rates.
//
// rng.hpp: counter-based random streams.
//
// A stream is identified by (master_seed, tag, n, rep). Its 64-bit key is
//
//   key = mix64(master ^ fnv1a64(tag) ^ (n * 0x9E3779B97F4A7C15) ^ rep)
//
// and the i-th raw draw is mix64(key + (i+1) * 0x9E3779B97F4A7C15), where
// mix64 is the SplitMix64 finalizer. Uniforms take the top 53 bits; normals
// use the polar Box-Muller method and cache the second variate. Nothing here
// depends on the standard library's distribution objects; raw and uniform
// draws are bit-identical everywhere, normals wherever std::log and std::sqrt
// agree (IEEE sqrt is exact; log depends on the libm).
#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "rmtlab/core.hpp"

namespace rmt {

inline constexpr std::uint64_t kGolden64 = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::string_view tag, std::uint64_t n, std::uint64_t rep)
      : key_(mix64(master_seed ^ fnv1a64(tag) ^ (n * kGolden64) ^ rep)) {}

  static RngStream from_key(std::uint64_t key) { return RngStream(key); }

  std::uint64_t key() const noexcept { return key_; }

  /// Derives an independent child stream; used to split one rep's draw into
  /// separately reproducible pieces (e.g. the Haar factor of a sum).
  RngStream child(std::string_view label) const { return RngStream(mix64(key_ ^ fnv1a64(label))); }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden64);
  }

  /// Uniform on [0,1).
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on (-1,1).
  double symmetric_uniform() noexcept {
    for (;;) {
      const double u = 2.0 * uniform() - 1.0;
      if (u != -1.0) return u;
    }
  }

  double normal() noexcept {
    if (spare_) {
      const double s = *spare_;
      spare_.reset();
      return s;
    }
    for (;;) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double s = u * u + v * v;
      if (s >= 1.0 || s == 0.0) continue;
      const double f = std::sqrt(-2.0 * std::log(s) / s);
      spare_ = v * f;
      return u * f;
    }
  }

  double normal(double stddev) noexcept { return stddev * normal(); }

  /// Standard complex Gaussian: E|z|^2 = 1, real and imaginary parts N(0,1/2).
  cplx complex_normal() noexcept {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

 private:
  explicit RngStream(std::uint64_t key) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_;
};

}  // namespace rmt
