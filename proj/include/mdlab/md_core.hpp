#pragma once

// Generic Merkle-Damgard engine: compression functions, padding and digests.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdlab/bigrepeat.hpp"

namespace mdlab {

using u128 = unsigned __int128;

/// A chaining value. Holds up to 128 bits; the owning CompressionSpec fixes
/// the width and values are always below 2^state_bits.
class State {
 public:
  constexpr State() = default;
  constexpr explicit State(u128 value) : value_(value) {}

  constexpr u128 value() const noexcept { return value_; }
  constexpr std::uint64_t low64() const noexcept { return static_cast<std::uint64_t>(value_); }

  friend constexpr bool operator==(State, State) = default;
  friend constexpr auto operator<=>(State a, State b) { return a.value_ <=> b.value_; }

 private:
  u128 value_ = 0;
};

struct StateHash {
  std::size_t operator()(State s) const noexcept {
    return static_cast<std::size_t>(s.low64() ^ static_cast<std::uint64_t>(s.value() >> 64) * 0x9e3779b97f4a7c15ULL);
  }
};

/// One message block of exactly b bits (b a multiple of 8).
class Block {
 public:
  Block() = default;
  explicit Block(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  static Block zero(unsigned block_bits);
  static Block from_hex(std::string_view hex);
  /// `value` written big-endian into the low bytes of a zero block.
  static Block from_index(unsigned block_bits, std::uint64_t value);

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::size_t bit_size() const noexcept { return bytes_.size() * 8; }
  std::string hex() const;

  friend bool operator==(const Block&, const Block&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

enum class CompressionKind { Toy, Md5 };

/// f : {0,1}^b x {0,1}^l -> {0,1}^l.
///
/// Toy instances (1 <= l <= 64) compute the low l bits of
///   mix64(mix64(seed ^ fold(block)) ^ state ^ kGolden)
/// where fold XORs the block's 8-byte little-endian lanes. The MD5 instance
/// is the RFC 1321 compression on 512-bit blocks with a 128-bit state.
class CompressionSpec {
 public:
  static CompressionSpec toy(std::uint64_t seed, unsigned state_bits, unsigned block_bits = 32);
  static CompressionSpec md5();

  CompressionKind kind() const noexcept { return kind_; }
  unsigned block_bits() const noexcept { return block_bits_; }
  unsigned state_bits() const noexcept { return state_bits_; }
  std::uint64_t seed() const noexcept { return seed_; }
  u128 state_mask() const noexcept;

  friend bool operator==(const CompressionSpec&, const CompressionSpec&) = default;

 private:
  CompressionSpec(CompressionKind kind, std::uint64_t seed, unsigned state_bits, unsigned block_bits)
      : kind_(kind), seed_(seed), state_bits_(state_bits), block_bits_(block_bits) {}

  CompressionKind kind_;
  std::uint64_t seed_;
  unsigned state_bits_;
  unsigned block_bits_;
};

/// Checked single evaluation of f(block, state).
State compress(const CompressionSpec& spec, State state, const Block& block);

/// f_B: the compression with its block fixed, as a self-map on states.
/// Sizes are validated once at construction; evaluation is unchecked.
class BlockMap {
 public:
  BlockMap(const CompressionSpec& spec, const Block& block);

  State operator()(State s) const noexcept;

  const CompressionSpec& spec() const noexcept { return spec_; }

 private:
  CompressionSpec spec_;
  std::uint64_t toy_key_ = 0;
  std::uint64_t mask_ = 0;
  std::uint32_t words_[16] = {};
};

std::uint64_t fold_block(std::span<const std::uint8_t> bytes) noexcept;

enum class PaddingMode { Truncating, Strict };
enum class Endianness { BigEndian, LittleEndian };

/// Appends a 1 bit, zeros, and an L-bit length field. Truncating mode keeps
/// the low L bits of the length; Strict mode rejects lengths >= 2^L.
struct PaddingSpec {
  unsigned length_bits = 64;
  PaddingMode mode = PaddingMode::Truncating;
  Endianness length_endianness = Endianness::BigEndian;

  static PaddingSpec truncating(unsigned length_bits, Endianness e = Endianness::BigEndian) {
    return {length_bits, PaddingMode::Truncating, e};
  }
  static PaddingSpec strict(unsigned length_bits, Endianness e = Endianness::BigEndian) {
    return {length_bits, PaddingMode::Strict, e};
  }

  friend bool operator==(const PaddingSpec&, const PaddingSpec&) = default;
};

/// Padding as a bit string packed MSB-first.
struct PaddingBits {
  std::vector<std::uint8_t> bytes;
  std::uint64_t bit_count = 0;

  bool bit(std::uint64_t i) const { return (bytes[i / 8] >> (7 - i % 8)) & 1U; }
  friend bool operator==(const PaddingBits&, const PaddingBits&) = default;
};

/// Throws InputTooLong in Strict mode when message_bit_length >= 2^L.
PaddingBits pad(const PaddingSpec& padding, unsigned block_bits, const RepeatCount& message_bit_length);
void check_length_allowed(const PaddingSpec& padding, const RepeatCount& message_bit_length);

struct HashSpec {
  CompressionSpec compression;
  PaddingSpec padding;
  State iv;
  unsigned output_bits;

  static HashSpec md5();
  /// Toy defaults: b = 32, Truncating L = 16 big-endian, iv = 0, n = l.
  static HashSpec toy(std::uint64_t seed, unsigned state_bits, unsigned block_bits = 32,
                      PaddingSpec padding = PaddingSpec::truncating(16), State iv = State{0});

  void validate() const;
};

/// Low n bits of the final state. MD5 digests render little-endian as in
/// RFC 1321; everything else renders most significant byte first.
struct Digest {
  u128 value = 0;
  unsigned bits = 0;
  bool little_endian = false;

  std::string hex() const;
  friend bool operator==(const Digest& a, const Digest& b) { return a.value == b.value && a.bits == b.bits; }
};

Digest make_digest(const HashSpec& spec, State final_state);

/// Folds the padding bits through f starting from `state` (message assumed to
/// end on a block boundary). Adds the number of compressions to *calls.
State absorb_padding(const HashSpec& spec, State state, const PaddingBits& padding, std::uint64_t* calls = nullptr);

Digest digest(const HashSpec& spec, std::span<const std::uint8_t> message, std::uint64_t* calls = nullptr);
Digest digest(const HashSpec& spec, std::string_view message);

/// [B]^k. Serialized size is logarithmic in k.
struct CompressedMessage {
  Block block;
  RepeatCount repeat;

  RepeatCount bit_length() const { return total_bits(block.bit_size(), repeat); }
  friend bool operator==(const CompressedMessage&, const CompressedMessage&) = default;
};

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace mdlab
