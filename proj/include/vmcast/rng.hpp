#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace vmcast {

/// splitmix64 finalizer; used to derive independent per-replication seeds
/// from one root seed. rep_seed(root, r) is documented in the README as the
/// seeding contract so runs are reproducible byte-for-byte.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rep_seed(std::uint64_t root, std::uint64_t index) {
  return mix64(root ^ mix64(index + 1));
}

/// mt19937_64 with hand-rolled distributions. std:: distributions are not
/// specified bit-exactly across standard libraries; these are.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// uniform in [0, 1)
  double uniform() { return (eng_() >> 11) * 0x1.0p-53; }

  /// uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// uniform integer in [lo, hi] inclusive
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform() * static_cast<double>(hi - lo + 1));
  }

  /// Box-Muller, one fresh pair per call
  double normal(double mean = 0.0, double stddev = 1.0) {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    return mean + stddev * z;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace vmcast
