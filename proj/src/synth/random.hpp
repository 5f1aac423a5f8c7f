#pragma once

#include <cstdint>
#include <random>

// Stable draws on top of mt19937_64: the standard distributions are not
// reproducible across library implementations.
namespace dorm::synth {

inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
}

}  // namespace dorm::synth
