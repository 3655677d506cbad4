#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace mdlab::md5 {

using Words = std::array<std::uint32_t, 4>;  // A, B, C, D

inline constexpr Words kInitialState = {0x67452301U, 0xefcdab89U, 0x98badcfeU, 0x10325476U};

/// RFC 1321 transform of one 512-bit block given as 16 little-endian words.
Words compress(const Words& state, std::span<const std::uint32_t, 16> block) noexcept;

}  // namespace mdlab::md5
