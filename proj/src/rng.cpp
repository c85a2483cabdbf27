#include "polydisk/rng.hpp"

#include <cmath>

namespace polydisk {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL))) {}

double RandomStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Complex RandomStream::unimodular() { return std::polar(1.0, 2.0 * kPi * uniform()); }

Complex RandomStream::in_disk(double radius) {
  const double r = radius * std::sqrt(uniform());
  return std::polar(r, 2.0 * kPi * uniform());
}

}  // namespace polydisk
