#ifndef CLSCND_DETAIL_RANDOM_HPP
#define CLSCND_DETAIL_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace clscnd::detail {

using Rng = std::mt19937_64;

/// Independent stream keyed by (seed, a, b, ...). Each key is split into
/// two 32-bit words because seed_seq only consumes 32 bits per value.
inline Rng make_stream(std::initializer_list<std::uint64_t> key) {
  std::vector<std::uint32_t> words;
  for (auto k : key) {
    words.push_back(static_cast<std::uint32_t>(k));
    words.push_back(static_cast<std::uint32_t>(k >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

/// Uniform [0, 1) from the top 53 bits; identical on every platform, unlike
/// std::uniform_real_distribution.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

/// Uniform integer in [0, n) by rejection; n > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do r = rng();
  while (r >= limit);
  return r % n;
}

}  // namespace clscnd::detail

#endif  // CLSCND_DETAIL_RANDOM_HPP
