#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace brex {

using Rng = std::mt19937_64;

/// Derives an independent stream seed from a base seed and a salt
/// (splitmix64 finalizer). Used wherever a sub-computation needs its own
/// reproducible generator: per-formula, per-restart, per-record seeds.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Rejection-sampled integer in [0, n). std::uniform_int_distribution is
// implementation-defined, so draws are made directly from the engine to keep
// streams identical across standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void shuffle_in_place(std::vector<T>& xs, Rng& rng) {
  for (std::size_t i = xs.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(xs[i - 1], xs[j]);
  }
}

}  // namespace brex
