#pragma once

// Exact arithmetic on block repeat counts that are far too large to write
// out, in particular counts of the form base + coeff * (arg)!.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mdlab {

using BigInt = boost::multiprecision::cpp_int;

/// Largest factorial argument whose residue is computed by explicit product.
inline constexpr std::uint64_t kMaxExplicitFactorialArg = 1'000'000;

BigInt parse_decimal(std::string_view text);
std::string to_decimal(const BigInt& value);
BigInt pow2(std::uint64_t exponent);
/// Number of significant bits; 0 for zero.
std::uint64_t bit_length(const BigInt& value);

/// An unbounded non-negative repeat count, either an explicit value or the
/// symbolic form base + coeff * (arg)!.
///
/// Equality is semantic: Factorial(b, 0, a) == Explicit(b), and two factorial
/// forms with different arguments compare equal when they denote the same
/// number. Factorial forms are never normalized to explicit values.
class RepeatCount {
 public:
  enum class Form { Explicit, Factorial };

  RepeatCount() = default;

  static RepeatCount explicit_count(BigInt value);
  static RepeatCount factorial(BigInt base, BigInt coeff, BigInt arg);

  Form form() const noexcept { return form_; }
  const BigInt& base() const noexcept { return base_; }
  const BigInt& coeff() const noexcept { return coeff_; }
  const BigInt& arg() const noexcept { return arg_; }

  /// True when the factorial term is absent or multiplied by zero.
  bool is_plain() const noexcept { return form_ == Form::Explicit || coeff_ == 0; }

  /// The denoted value if it does not exceed `cap`.
  std::optional<BigInt> materialize(const BigInt& cap) const;
  std::optional<std::uint64_t> to_u64() const;

  friend bool operator==(const RepeatCount& a, const RepeatCount& b);

 private:
  Form form_ = Form::Explicit;
  BigInt base_ = 0;
  BigInt coeff_ = 0;
  BigInt arg_ = 1;
};

/// Exact residue of the denoted value modulo m (m >= 1).
///
/// A factorial term vanishes whenever m <= arg. Otherwise the residue of
/// arg! is computed by explicit product, which is refused with
/// IrreducibleModulus once arg exceeds kMaxExplicitFactorialArg.
BigInt reduce_mod(const RepeatCount& k, const BigInt& m);
std::uint64_t reduce_mod(const RepeatCount& k, std::uint64_t m);

/// Exact ordering of the denoted value against `threshold`. Large factorials
/// are decided from the lower bound (arg/2)^(arg/2) <= arg! and are never
/// materialized past the threshold.
std::strong_ordering compare(const RepeatCount& k, const BigInt& threshold);

/// The repeat count scaled by the block size: denotes exactly b * k.
RepeatCount total_bits(const BigInt& block_bits, const RepeatCount& k);

/// Base-2 logarithms of the bounds (2^(l-1))^(2^(l-1)) < (2^l)! < (2^l)^(2^l).
struct BitLengthBounds {
  BigInt lo;
  BigInt hi;
};
BitLengthBounds bit_length_bounds(std::uint64_t ell);

/// arg! if it does not exceed `cap`; stops multiplying as soon as it does.
std::optional<BigInt> factorial_up_to(const BigInt& arg, const BigInt& cap);

}  // namespace mdlab
