#pragma once

#include <cstdint>

namespace qdialogue {

// Deterministic uniform stream (splitmix64). Every source of randomness in
// the simulator is an explicit stream or a single draw passed in by the
// caller, so a run is reproducible from its seed alone, on any platform and
// under any thread scheduling.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : initial_seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  int next_bit() { return static_cast<int>(next_u64() >> 63); }

  std::uint64_t initial_seed() const { return initial_seed_; }

  /// Seed for sub-task `index` of a task seeded with `base`. Children are
  /// independent of the order in which they are created or consumed, which
  /// keeps parallel Monte Carlo batches deterministic.
  static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  RandomStream derive(std::uint64_t index) const {
    return RandomStream(derive_seed(initial_seed_, index));
  }

 private:
  std::uint64_t initial_seed_;
  std::uint64_t state_;
};

}  // namespace qdialogue
