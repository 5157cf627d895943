#pragma once

#include <cstdint>
#include <random>

namespace cftp {

// splitmix64 finalizer, used to turn (base seed, stream index) pairs into
// well-separated engine seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seedable 64-bit generator with an explicit stream-split rule: replication i
// of a run with base seed s draws from substream(s, i), so runs are
// reproducible independently of thread scheduling. uniform01/below avoid
// std::uniform_*_distribution on purpose: those are implementation-defined,
// and identical seeds must give identical trajectories everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  static Rng substream(std::uint64_t base_seed, std::uint64_t index) {
    return Rng(mix64(base_seed) ^ mix64(index * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform double in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in [0, n), unbiased (modulo rejection).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cftp
