#pragma once

#include <cstdint>
#include <random>

#include "qcoh/linalg.hpp"

namespace qcoh {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Seed for stream `index` under `master`. Distinct (master, index) pairs give
/// decorrelated seeds, so sample i can be drawn without touching samples < i.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

/// Seedable 64-bit generator (mt19937_64) with portable uniform and Gaussian
/// draws. Uniforms use the top 53 bits; Gaussians use Box-Muller, so replays
/// match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Generator for stream `index` of `master`.
  static Rng stream(std::uint64_t master, std::uint64_t index) {
    return Rng(stream_seed(master, index));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on (0, 1].
  double uniform();

  /// Standard complex Gaussian: real and imaginary parts are independent N(0, 1).
  Complex complex_gaussian();

 private:
  std::mt19937_64 engine_;
};

}  // namespace qcoh
