#pragma once

#include <cstdint>
#include <random>

#include "polydisk/types.hpp"

namespace polydisk {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic random stream derived from (seed, stream id). Draws are built
/// from raw 64-bit engine output so results do not depend on the standard
/// library's distribution implementations.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on the unit circle.
  Complex unimodular();
  /// Uniform (by area) in the disk of the given radius.
  Complex in_disk(double radius);
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace polydisk
