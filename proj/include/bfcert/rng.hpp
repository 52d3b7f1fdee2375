#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace bfcert {

// Every randomized entry point defaults to this seed so repeated runs agree
// byte for byte unless the caller opts out.
inline constexpr std::uint64_t kDefaultSeed = 42;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Decorrelates seeds for sub-tasks (amplification repeats, per-iteration
// restriction searches, per-node tree estimates).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  return splitmix64(base ^ (salt * 0x9E3779B97F4A7C15ULL));
}

// Exactly uniform over {0, ..., m-1} via rejection; never biased by modulus.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t m) {
  if (m <= 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % m;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % m;
}

}  // namespace bfcert
