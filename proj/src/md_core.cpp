#include "mdlab/md_core.hpp"

#include <algorithm>

#include "mdlab/errors.hpp"
#include "mdlab/md5.hpp"
#include "mdlab/mix.hpp"

namespace mdlab {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

class BitWriter {
 public:
  void put(bool bit) {
    if (count_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80U >> (count_ % 8));
    ++count_;
  }
  void put_zeros(std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i) put(false);
  }
  PaddingBits finish() && { return {std::move(bytes_), count_}; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t count_ = 0;
};

std::uint32_t load_le32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

u128 pack_md5(const md5::Words& w) {
  return static_cast<u128>(w[0]) | static_cast<u128>(w[1]) << 32 | static_cast<u128>(w[2]) << 64 |
         static_cast<u128>(w[3]) << 96;
}

md5::Words unpack_md5(u128 v) {
  return {static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(v >> 32), static_cast<std::uint32_t>(v >> 64),
          static_cast<std::uint32_t>(v >> 96)};
}

State md5_iv() { return State{pack_md5(md5::kInitialState)}; }

// One checked compression over raw block bytes.
State compress_bytes(const CompressionSpec& spec, State state, std::span<const std::uint8_t> bytes) {
  return BlockMap(spec, Block(std::vector<std::uint8_t>(bytes.begin(), bytes.end())))(state);
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xF]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw ContractViolation("hex string has odd length");
  auto nibble = [&](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    throw ContractViolation("invalid hex digit '" + std::string(1, c) + "'");
  };
  std::vector<std::uint8_t> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

Block Block::zero(unsigned block_bits) {
  if (block_bits == 0 || block_bits % 8 != 0) throw ContractViolation("block size must be a positive multiple of 8");
  return Block(std::vector<std::uint8_t>(block_bits / 8, 0));
}

Block Block::from_hex(std::string_view hex) { return Block(mdlab::from_hex(hex)); }

Block Block::from_index(unsigned block_bits, std::uint64_t value) {
  Block b = zero(block_bits);
  for (std::size_t i = 0; i < b.bytes_.size() && i < 8; ++i) {
    b.bytes_[b.bytes_.size() - 1 - i] = static_cast<std::uint8_t>(value >> (8 * i));
  }
  return b;
}

std::string Block::hex() const { return to_hex(bytes_); }

CompressionSpec CompressionSpec::toy(std::uint64_t seed, unsigned state_bits, unsigned block_bits) {
  if (state_bits < 1 || state_bits > 64) throw ContractViolation("toy state size must be in [1, 64]");
  if (block_bits == 0 || block_bits % 8 != 0) throw ContractViolation("block size must be a positive multiple of 8");
  return CompressionSpec(CompressionKind::Toy, seed, state_bits, block_bits);
}

CompressionSpec CompressionSpec::md5() { return CompressionSpec(CompressionKind::Md5, 0, 128, 512); }

u128 CompressionSpec::state_mask() const noexcept {
  return state_bits_ >= 128 ? ~static_cast<u128>(0) : (static_cast<u128>(1) << state_bits_) - 1;
}

std::uint64_t fold_block(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < bytes.size(); ++i) acc ^= static_cast<std::uint64_t>(bytes[i]) << (8 * (i % 8));
  return acc;
}

BlockMap::BlockMap(const CompressionSpec& spec, const Block& block) : spec_(spec) {
  if (block.bit_size() != spec.block_bits()) {
    throw ContractViolation("block has " + std::to_string(block.bit_size()) + " bits, compression expects " +
                            std::to_string(spec.block_bits()));
  }
  if (spec.kind() == CompressionKind::Toy) {
    toy_key_ = mix64(spec.seed() ^ fold_block(block.bytes()));
    mask_ = low_bits_mask(spec.state_bits());
  } else {
    for (int i = 0; i < 16; ++i) words_[i] = load_le32(block.bytes().data() + 4 * i);
  }
}

State BlockMap::operator()(State s) const noexcept {
  if (spec_.kind() == CompressionKind::Toy) return State{mix64(toy_key_ ^ s.low64() ^ kGolden) & mask_};
  return State{pack_md5(md5::compress(unpack_md5(s.value()), std::span<const std::uint32_t, 16>(words_, 16)))};
}

State compress(const CompressionSpec& spec, State state, const Block& block) {
  if (state.value() > spec.state_mask()) {
    throw ContractViolation("state does not fit in " + std::to_string(spec.state_bits()) + " bits");
  }
  return BlockMap(spec, block)(state);
}

void check_length_allowed(const PaddingSpec& padding, const RepeatCount& message_bit_length) {
  if (padding.mode == PaddingMode::Strict &&
      compare(message_bit_length, pow2(padding.length_bits)) != std::strong_ordering::less) {
    throw InputTooLong("message of 2^" + std::to_string(padding.length_bits) +
                       " bits or more is not allowed under strict padding");
  }
}

PaddingBits pad(const PaddingSpec& padding, unsigned block_bits, const RepeatCount& message_bit_length) {
  const unsigned L = padding.length_bits;
  if (L < 1 || L >= block_bits) throw ContractViolation("length field must satisfy 1 <= L <= b - 1");
  if (padding.length_endianness == Endianness::LittleEndian && L % 8 != 0) {
    throw ContractViolation("little-endian length field needs a whole number of bytes");
  }
  check_length_allowed(padding, message_bit_length);

  const std::uint64_t b = block_bits;
  const std::uint64_t used = reduce_mod(message_bit_length, b);
  // (used + 1 + zeros) = b - L (mod b)
  const std::uint64_t zeros = ((b - L - 1) + b - used) % b;
  const BigInt length_field = reduce_mod(message_bit_length, pow2(L));

  BitWriter out;
  out.put(true);
  out.put_zeros(zeros);
  if (padding.length_endianness == Endianness::BigEndian) {
    for (unsigned i = L; i-- > 0;) out.put(boost::multiprecision::bit_test(length_field, i));
  } else {
    for (unsigned byte = 0; byte < L / 8; ++byte) {
      for (unsigned bit = 8; bit-- > 0;) out.put(boost::multiprecision::bit_test(length_field, byte * 8 + bit));
    }
  }
  return std::move(out).finish();
}

HashSpec HashSpec::md5() {
  return {CompressionSpec::md5(), PaddingSpec::truncating(64, Endianness::LittleEndian), md5_iv(), 128};
}

HashSpec HashSpec::toy(std::uint64_t seed, unsigned state_bits, unsigned block_bits, PaddingSpec padding, State iv) {
  HashSpec spec{CompressionSpec::toy(seed, state_bits, block_bits), padding, iv, state_bits};
  spec.validate();
  return spec;
}

void HashSpec::validate() const {
  if (output_bits < 1 || output_bits > compression.state_bits()) throw ContractViolation("output size must be in [1, l]");
  if (iv.value() > compression.state_mask()) throw ContractViolation("iv does not fit in the state size");
  if (padding.length_bits < 1 || padding.length_bits >= compression.block_bits()) {
    throw ContractViolation("length field must satisfy 1 <= L <= b - 1");
  }
}

std::string Digest::hex() const {
  const unsigned nbytes = (bits + 7) / 8;
  std::vector<std::uint8_t> bytes(nbytes);
  for (unsigned i = 0; i < nbytes; ++i) {
    const auto byte = static_cast<std::uint8_t>(value >> (8 * i));
    bytes[little_endian ? i : nbytes - 1 - i] = byte;
  }
  return to_hex(bytes);
}

Digest make_digest(const HashSpec& spec, State final_state) {
  const u128 mask = spec.output_bits >= 128 ? ~static_cast<u128>(0) : (static_cast<u128>(1) << spec.output_bits) - 1;
  return {final_state.value() & mask, spec.output_bits, spec.compression.kind() == CompressionKind::Md5};
}

State absorb_padding(const HashSpec& spec, State state, const PaddingBits& padding, std::uint64_t* calls) {
  const unsigned b = spec.compression.block_bits();
  if (padding.bit_count % b != 0) throw ContractViolation("padding does not end on a block boundary");
  const std::size_t block_bytes = b / 8;
  for (std::size_t off = 0; off < padding.bytes.size(); off += block_bytes) {
    state = compress_bytes(spec.compression, state,
                           std::span<const std::uint8_t>(padding.bytes).subspan(off, block_bytes));
    if (calls) ++*calls;
  }
  return state;
}

Digest digest(const HashSpec& spec, std::span<const std::uint8_t> message, std::uint64_t* calls) {
  spec.validate();
  const unsigned b = spec.compression.block_bits();
  const auto bit_length = RepeatCount::explicit_count(BigInt(message.size()) * 8);
  const PaddingBits padding = pad(spec.padding, b, bit_length);

  std::vector<std::uint8_t> padded(message.begin(), message.end());
  padded.insert(padded.end(), padding.bytes.begin(), padding.bytes.end());
  const std::size_t block_bytes = b / 8;
  State state = spec.iv;
  for (std::size_t off = 0; off < padded.size(); off += block_bytes) {
    state = compress_bytes(spec.compression, state, std::span<const std::uint8_t>(padded).subspan(off, block_bytes));
    if (calls) ++*calls;
  }
  return make_digest(spec, state);
}

Digest digest(const HashSpec& spec, std::string_view message) {
  return digest(spec, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(message.data()),
                                                    message.size()));
}

}  // namespace mdlab
