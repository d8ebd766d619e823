#pragma once

#include <cstdint>
#include <random>

namespace rcl {

// splitmix64 step; used for seed mixing so that derived streams decorrelate
// even for adjacent ids.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from a root seed and up to two stream
/// tags (e.g. (seed, oracle_id) or (seed, check_tag, trial_index)).
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a,
                                 std::uint64_t b = 0) {
  std::uint64_t s = root;
  std::uint64_t x = splitmix64_next(s);
  s ^= a + 0x9e3779b97f4a7c15ULL;
  x ^= splitmix64_next(s);
  s ^= b + 0xd1b54a32d192ed03ULL;
  x ^= splitmix64_next(s);
  return x;
}

/// Deterministic random stream. Wraps std::mt19937_64 (whose output sequence
/// is fixed by the standard) and maps to doubles/bounded ints by hand so that
/// results do not depend on the standard library's distribution
/// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). n must be >= 1.
  std::uint64_t next_below(std::uint64_t n) {
    // rejection sampling over the top multiple of n
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
  }

  bool bernoulli(double p) { return next_unit() < p; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rcl
