#ifndef WFLO_RNG_HPP_
#define WFLO_RNG_HPP_

#include <cstdint>
#include <numbers>
#include <random>

namespace wflo {

using Rng = std::mt19937_64;

// splitmix64 finaliser. Run i of a farm with master seed s uses
// split_seed(s, i); the mapping does not depend on scheduling order.
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; unlike
// std::uniform_real_distribution the result is identical across standard
// libraries.
inline double uniform01(Rng& rng) { return double(rng() >> 11) * 0x1.0p-53; }

inline double uniform_angle(Rng& rng) { return 2.0 * std::numbers::pi * uniform01(rng); }

}  // namespace wflo

#endif  // WFLO_RNG_HPP_
