#pragma once

#include <cstdint>

namespace polygrowth {

// Stateless counter-based generator: every draw is a hash of its full key,
// so results never depend on evaluation order, window layout or threads.

constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct RngKey {
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
};

constexpr std::uint64_t counter_hash(RngKey key, std::int64_t x, std::int64_t y, std::int64_t t) {
  std::uint64_t h = mix64(key.seed);
  h = mix64(h ^ (key.replica * 0xd1b54a32d192ed03ULL));
  h = mix64(h ^ static_cast<std::uint64_t>(x));
  h = mix64(h ^ (static_cast<std::uint64_t>(y) * 0xa0761d6478bd642fULL));
  h = mix64(h ^ static_cast<std::uint64_t>(t));
  return h;
}

/// Uniform on (0,1]; a site is occupied iff this value is <= pi(S).
constexpr double uniform01(RngKey key, std::int64_t x, std::int64_t y, std::int64_t t) {
  return static_cast<double>((counter_hash(key, x, y, t) >> 11) + 1) * 0x1.0p-53;
}

}  // namespace polygrowth
