#pragma once

#include <cstdint>

namespace mdlab {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

/// Seed for the i-th independent sample, trial or key drawn from a master seed.
constexpr std::uint64_t split_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return mix64(master_seed + index);
}

constexpr std::uint64_t low_bits_mask(unsigned bits) noexcept {
  return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
}

}  // namespace mdlab
