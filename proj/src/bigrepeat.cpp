#include "mdlab/bigrepeat.hpp"

#include <limits>
#include <utility>

#include "mdlab/errors.hpp"

namespace mdlab {

namespace {

// Product lo * (lo+1) * ... * hi, or nullopt once it exceeds cap. Requires
// lo >= 2 so the loop runs at most bit_length(cap) + 1 times.
std::optional<BigInt> product_up_to(const BigInt& lo, const BigInt& hi, const BigInt& cap) {
  BigInt product = 1;
  for (BigInt i = lo; i <= hi; ++i) {
    product *= i;
    if (product > cap) return std::nullopt;
  }
  return product;
}

std::strong_ordering order(const BigInt& a, const BigInt& b) {
  const int c = a.compare(b);
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

int sign(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Both counts carry a live factorial term.
bool factorial_forms_equal(const RepeatCount& a, const RepeatCount& b) {
  const RepeatCount& x = a.arg() <= b.arg() ? a : b;
  const RepeatCount& y = a.arg() <= b.arg() ? b : a;
  // y = y.base + y.coeff * P * F with F = x.arg! and P = (x.arg+1)...(y.arg),
  // so equality means x.base - y.base == F * (y.coeff * P - x.coeff).
  const BigInt diff = x.base() - y.base();
  const BigInt abs_diff = abs(diff);
  const BigInt cap = (x.coeff() + abs_diff) / y.coeff() + 1;
  const auto p = product_up_to(x.arg() + 1, y.arg(), cap);
  if (!p) return false;
  const BigInt s = y.coeff() * *p - x.coeff();
  if (s == 0) return diff == 0;
  if (sign(s) != sign(diff)) return false;
  const auto f = factorial_up_to(x.arg(), abs_diff);
  return f && *f * abs(s) == abs_diff;
}

}  // namespace

BigInt parse_decimal(std::string_view text) {
  if (text.empty()) throw ContractViolation("empty decimal string");
  BigInt value = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      throw ContractViolation("invalid decimal digit in '" + std::string(text) + "'");
    }
    value = value * 10 + (ch - '0');
  }
  return value;
}

std::string to_decimal(const BigInt& value) { return value.str(); }

BigInt pow2(std::uint64_t exponent) {
  BigInt v = 1;
  v <<= exponent;
  return v;
}

std::uint64_t bit_length(const BigInt& value) {
  if (value <= 0) return 0;
  return static_cast<std::uint64_t>(boost::multiprecision::msb(value)) + 1;
}

RepeatCount RepeatCount::explicit_count(BigInt value) {
  if (value < 0) throw ContractViolation("repeat count must be non-negative");
  RepeatCount k;
  k.form_ = Form::Explicit;
  k.base_ = std::move(value);
  return k;
}

RepeatCount RepeatCount::factorial(BigInt base, BigInt coeff, BigInt arg) {
  if (base < 0 || coeff < 0) throw ContractViolation("factorial form needs non-negative base and coeff");
  if (arg < 1) throw ContractViolation("factorial argument must be positive");
  RepeatCount k;
  k.form_ = Form::Factorial;
  k.base_ = std::move(base);
  k.coeff_ = std::move(coeff);
  k.arg_ = std::move(arg);
  return k;
}

std::optional<BigInt> RepeatCount::materialize(const BigInt& cap) const {
  if (is_plain()) {
    if (base_ > cap) return std::nullopt;
    return base_;
  }
  if (base_ > cap) return std::nullopt;
  const BigInt room = (cap - base_) / coeff_;
  const auto f = factorial_up_to(arg_, room);
  if (!f) return std::nullopt;
  return base_ + coeff_ * *f;
}

std::optional<std::uint64_t> RepeatCount::to_u64() const {
  const auto v = materialize(BigInt(std::numeric_limits<std::uint64_t>::max()));
  if (!v) return std::nullopt;
  return v->convert_to<std::uint64_t>();
}

bool operator==(const RepeatCount& a, const RepeatCount& b) {
  if (a.is_plain() && b.is_plain()) return a.base() == b.base();
  if (a.is_plain()) return compare(b, a.base()) == std::strong_ordering::equal;
  if (b.is_plain()) return compare(a, b.base()) == std::strong_ordering::equal;
  return factorial_forms_equal(a, b);
}

std::optional<BigInt> factorial_up_to(const BigInt& arg, const BigInt& cap) {
  if (cap < 1) return std::nullopt;
  return product_up_to(2, arg, cap);
}

BigInt reduce_mod(const RepeatCount& k, const BigInt& m) {
  if (m < 1) throw ContractViolation("modulus must be positive");
  if (k.is_plain()) return k.base() % m;
  BigInt fact_mod;
  if (m <= k.arg()) {
    fact_mod = 0;  // m is one of the factors of arg!
  } else if (k.arg() > kMaxExplicitFactorialArg) {
    throw IrreducibleModulus("factorial residue of " + to_decimal(k.arg()) + "! modulo " + to_decimal(m) +
                             " exceeds the explicit-product budget");
  } else {
    const auto n = k.arg().convert_to<std::uint64_t>();
    if (m <= std::numeric_limits<std::uint64_t>::max()) {
      const auto mm = m.convert_to<std::uint64_t>();
      unsigned __int128 acc = 1 % mm;
      for (std::uint64_t i = 2; i <= n; ++i) acc = (acc * i) % mm;
      fact_mod = static_cast<std::uint64_t>(acc);
    } else {
      fact_mod = 1;
      for (std::uint64_t i = 2; i <= n; ++i) fact_mod = (fact_mod * i) % m;
    }
  }
  return (k.base() % m + (k.coeff() % m) * fact_mod) % m;
}

std::uint64_t reduce_mod(const RepeatCount& k, std::uint64_t m) {
  return reduce_mod(k, BigInt(m)).convert_to<std::uint64_t>();
}

std::strong_ordering compare(const RepeatCount& k, const BigInt& threshold) {
  if (k.is_plain()) return order(k.base(), threshold);
  if (k.base() > threshold) return std::strong_ordering::greater;
  const BigInt room = threshold - k.base();
  // (h)^h <= arg! for h = floor(arg/2), and h^h >= 2^(h * floor(log2 h)).
  const BigInt half = k.arg() / 2;
  if (half >= 2) {
    const BigInt log_lower = half * BigInt(bit_length(half) - 1);
    if (log_lower >= BigInt(bit_length(room))) return std::strong_ordering::greater;
  }
  const auto f = factorial_up_to(k.arg(), room);
  if (!f) return std::strong_ordering::greater;
  return order(BigInt(k.coeff() * *f), room);
}

RepeatCount total_bits(const BigInt& block_bits, const RepeatCount& k) {
  if (block_bits < 1) throw ContractViolation("block size must be positive");
  if (k.form() == RepeatCount::Form::Explicit) return RepeatCount::explicit_count(block_bits * k.base());
  return RepeatCount::factorial(block_bits * k.base(), block_bits * k.coeff(), k.arg());
}

BitLengthBounds bit_length_bounds(std::uint64_t ell) {
  if (ell < 2) throw ContractViolation("bit_length_bounds needs ell >= 2");
  return {pow2(ell - 1) * (ell - 1), pow2(ell) * ell};
}

}  // namespace mdlab
