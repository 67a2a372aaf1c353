#pragma once

#include <cstdint>
#include <random>

namespace telesim::rng {

/// splitmix64 finalizer; a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives the seed of one trial from the master seed: trials form an
/// independently seeded, order-free family, so batches can run in parallel
/// and still aggregate deterministically.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed,
                                   std::uint64_t trial_index) {
  return mix64(mix64(master_seed) ^ mix64(trial_index + 1));
}

/// Deterministic uniform stream. The engine is the standard-specified
/// mt19937_64; doubles are built from the top 53 bits so the stream is
/// bit-identical across platforms.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool coin() { return (engine_() & 1ULL) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace telesim::rng
