#ifndef LVSIM_RANDOM_HPP_
#define LVSIM_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace lvsim {

// std::mt19937_64 and std::seed_seq are fully specified by the standard, so
// the helpers below give the same streams on every conforming toolchain,
// unlike the std:: distribution adaptors.
using Engine = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double unit_uniform(Engine &engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Standard normal variate by the Box-Muller transform.
inline double standard_normal(Engine &engine) {
  const double u1 = 1.0 - unit_uniform(engine); // (0, 1]
  const double u2 = unit_uniform(engine);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Seed of the `index`-th independent substream of `seed`.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

} // namespace lvsim

#endif // LVSIM_RANDOM_HPP_
