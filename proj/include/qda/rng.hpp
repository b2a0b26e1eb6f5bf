#pragma once

#include <array>
#include <cstdint>
#include <numbers>

namespace qda {

// Counter-based random streams built on Philox4x32-10.  Every draw is a pure
// function of (seed, position, substream), so a trial can be evaluated at any
// time, in any order, on any thread, and still see exactly the same randomness.
namespace philox {

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                          std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round != 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t product0 = std::uint64_t{kMul0} * counter[0];
    const std::uint64_t product1 = std::uint64_t{kMul1} * counter[2];
    counter = {static_cast<std::uint32_t>(product1 >> 32) ^ counter[1] ^ key[0],
               static_cast<std::uint32_t>(product1),
               static_cast<std::uint32_t>(product0 >> 32) ^ counter[3] ^ key[1],
               static_cast<std::uint32_t>(product0)};
  }
  return counter;
}

}  // namespace philox

// One substream per independently-drawn quantity of a trial.
enum class Substream : std::uint32_t {
  pair_angle = 0,       // 2*beta of the source pair
  pair_kind = 1,        // singlet/triplet admixture draw
  analyzer_u = 2,       // u of the first analyzer
  analyzer_u_prime = 3, // u' of the second analyzer
  born_first = 4,       // comparison draw, first analyzer
  born_second = 5,      // comparison draw, second analyzer
  u_prime_b = 6,        // extra second-analyzer draws for counterfactual settings
  u_prime_c = 7,
  u_prime_d = 8,
  matrix_a = 9,         // random analyzer-matrix parameters
  matrix_d = 10,
  matrix_h = 11,
  matrix_phi = 12,
};

inline std::uint64_t random_bits(std::uint64_t seed, std::uint64_t position, Substream substream) {
  const auto words = philox::block(
      {static_cast<std::uint32_t>(position), static_cast<std::uint32_t>(position >> 32),
       static_cast<std::uint32_t>(substream), 0u},
      {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  return words[0] | (std::uint64_t{words[1]} << 32);
}

// Uniform on [0, 1), 53 significant bits.
inline double uniform01(std::uint64_t seed, std::uint64_t position, Substream substream) {
  return static_cast<double>(random_bits(seed, position, substream) >> 11) * 0x1.0p-53;
}

// Uniform on [-1, 1).
inline double uniform_symmetric(std::uint64_t seed, std::uint64_t position, Substream substream) {
  return 2.0 * uniform01(seed, position, substream) - 1.0;
}

// Uniform on [0, 2*pi).
inline double uniform_angle(std::uint64_t seed, std::uint64_t position, Substream substream) {
  return 2.0 * std::numbers::pi * uniform01(seed, position, substream);
}

}  // namespace qda
