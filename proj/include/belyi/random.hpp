#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace belyi {

/// Random stream used by every sampler in the library.
using Rng = std::mt19937_64;

namespace detail {

inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Absorbs one word into a 64-bit lane.
inline constexpr std::uint64_t absorb(std::uint64_t state, std::uint64_t word) {
  return splitmix64(state ^ splitmix64(word));
}

}  // namespace detail

/// 128-bit key of the stream belonging to trial `trial` at size `n`.
///
/// Two lanes with distinct domain constants absorb (master_seed, n, trial)
/// independently; each lane is a chain of SplitMix64 finalizers.
inline std::array<std::uint64_t, 2> stream_key(std::uint64_t master_seed, std::uint64_t n,
                                               std::uint64_t trial) {
  std::uint64_t lo = 0x6a09e667f3bcc908ULL;
  std::uint64_t hi = 0xbb67ae8584caa73bULL;
  for (std::uint64_t w : {master_seed, n, trial}) {
    lo = detail::absorb(lo, w);
    hi = detail::absorb(hi, w ^ 0xa54ff53a5f1d36f1ULL);
  }
  return {lo, hi};
}

/// Engine for an independent per-trial stream; depends only on its arguments.
inline Rng make_stream(std::uint64_t master_seed, std::uint64_t n, std::uint64_t trial) {
  auto key = stream_key(master_seed, n, trial);
  std::seed_seq seq{static_cast<std::uint32_t>(key[0]), static_cast<std::uint32_t>(key[0] >> 32),
                    static_cast<std::uint32_t>(key[1]), static_cast<std::uint32_t>(key[1] >> 32)};
  return Rng(seq);
}

inline Rng make_stream(std::uint64_t seed) { return make_stream(seed, 0, 0); }

}  // namespace belyi
