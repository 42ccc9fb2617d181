#pragma once

#include <cstdint>
#include <random>

namespace koethe::detail {

/// Generator for stream `stream` of a seeded computation. Streams with distinct
/// (seed, stream, sub) never share state, so restarts can run in any order.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t sub = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(sub), static_cast<std::uint32_t>(sub >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) built from the top 53 bits; independent of the
/// standard library's distribution implementations.
inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline std::size_t uniform_index(std::mt19937_64& g, std::size_t n) {
  return static_cast<std::size_t>(uniform01(g) * static_cast<double>(n));
}

}  // namespace koethe::detail
