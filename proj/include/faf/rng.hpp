#pragma once
#include <cstdint>
#include <random>

namespace faf {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-sample stream derived from (master seed, sample index), so results do
// not depend on how samples are scheduled across workers.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x5851f42d4c957f2dULL));
}

inline std::mt19937_64 make_rng(std::uint64_t master, std::uint64_t index = 0) {
  return std::mt19937_64(stream_seed(master, index));
}

}  // namespace faf
