#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace nuggp {

/// splitmix64 finalizer; also used as the stream-splitting hash.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic sub-stream seed: hashes a master seed with a path of stream
/// indices (replicate number, model index, ...). Different paths give
/// independent streams, identical paths always give the same seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  for (std::uint64_t p : path) h = mix64(h ^ mix64(p ^ 0xbb67ae8584caa73bULL));
  return h;
}

/// splitmix64 engine with the scalar draws the samplers need. Hand-rolled so
/// streams are identical across platforms and standard-library versions.
class SplitMix {
public:
  using result_type = std::uint64_t;

  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on the open interval (0,1).
  double u01() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return (*this)() % n; }

  /// Box-Muller transform; one variate per call.
  double normal() {
    const double u1 = u01(), u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// Marsaglia-Tsang; shape < 1 boosted through Gamma(shape+1).
  double gamma(double shape, double rate) {
    if (shape < 1.0) {
      const double u = u01();
      return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      const double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = u01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
  }

  double chisq(double df) { return 2.0 * gamma(0.5 * df, 1.0); }

  double student_t(double df) { return normal() / std::sqrt(chisq(df) / df); }

private:
  std::uint64_t state_;
};

/// Standard-normal variate keyed to the bit pattern of x: the same x maps to
/// the same variate forever, independent of call order.
inline double keyed_normal(double x) {
  SplitMix rng(mix64(std::bit_cast<std::uint64_t>(x) ^ 0x3c6ef372fe94f82bULL));
  return rng.normal();
}

/// Uniform (0,1) variate keyed to the bit pattern of x.
inline double keyed_uniform(double x) {
  SplitMix rng(mix64(std::bit_cast<std::uint64_t>(x) ^ 0xa54ff53a5f1d36f1ULL));
  return rng.u01();
}

}  // namespace nuggp
