#pragma once

#include "mlspectra/scalar.hpp"

#include <cstdint>
#include <random>

namespace mlspectra {

// Seed used when none is given; every command is reproducible by default.
inline constexpr std::uint64_t kDefaultSeed = 20240607;

// splitmix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Deterministic across standard libraries: only the engine (whose output is
// fixed by the standard) is taken from <random>; distributions are local.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next() { return engine_(); }
  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Uniform in [0, 1).
  double uniform01();
  double normal();
  Complex unit_complex();
  Complex gaussian_complex();

 private:
  std::mt19937_64 engine_;
};

}  // namespace mlspectra
