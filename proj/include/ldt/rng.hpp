#pragma once

#include <cstdint>
#include <random>

namespace ldt {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Seed for an independent stream labelled (seed, index); results depend
/// only on the pair, never on scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ull));
}

inline Rng derive_stream(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

}  // namespace ldt
