#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dtbas {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Seeded random stream. All simulator randomness flows through this type;
/// no ambient entropy anywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, bound) without modulo bias.
  uint64_t below(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  int bit() { return static_cast<int>(next_u64() >> 63); }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Box-Muller gaussian; cached second variate keeps the stream compact.
  double gaussian(double mean, double stddev) {
    if (have_cached_) {
      have_cached_ = false;
      return mean + stddev * cached_;
    }
    double u1;
    do {
      u1 = unit();
    } while (u1 <= 0.0);
    const double u2 = unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return mean + stddev * r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

/// Per-(meter, interval) stream derivation: seed xor hash(meter, interval).
inline Rng derive_rng(uint64_t seed, uint64_t a, uint64_t b) {
  return Rng(seed ^ splitmix64(splitmix64(a + 1) + 0x9e3779b97f4a7c15ull * (b + 1)));
}

inline Rng derive_rng(uint64_t seed, uint64_t a) {
  return Rng(seed ^ splitmix64(a + 1));
}

}  // namespace dtbas
