#pragma once

#include <cstdint>
#include <random>

namespace sumlab {

// All stochastic routines thread an explicit seed through mt19937_64 and
// draw bounded values with the multiply-shift reduction below, so runs
// replay bit-exactly on any platform.
inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

inline double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace sumlab
