#include "doctest.h"

#include <random>

#include "mdlab/bigrepeat.hpp"
#include "mdlab/errors.hpp"
#include "oracles.hpp"

using namespace mdlab;

namespace {

RepeatCount ex(std::uint64_t v) { return RepeatCount::explicit_count(v); }
RepeatCount fact(const BigInt& b, const BigInt& c, const BigInt& a) { return RepeatCount::factorial(b, c, a); }

BigInt log2_floor_plus(const BigInt& v) { return BigInt(bit_length(v)); }

}  // namespace

TEST_CASE("reduce_mod examples") {
  CHECK(reduce_mod(ex(100), BigInt(7)) == 2);
  CHECK(reduce_mod(fact(256, 3, 256), BigInt(10)) == 6);
  CHECK(reduce_mod(fact(0, 1, 5), BigInt(7)) == 1);
  CHECK(reduce_mod(fact(5, 7, 3), 1) == 0);
}

TEST_CASE("reduce_mod matches explicit factorials for arg <= 12 and m <= 50") {
  for (std::uint64_t a = 1; a <= 12; ++a) {
    const BigInt f = oracle::factorial(a);
    for (std::uint64_t m = 1; m <= 50; ++m) {
      for (std::uint64_t base : {0, 1, 17, 1000}) {
        for (std::uint64_t c : {0, 1, 2, 9}) {
          const BigInt expected = (BigInt(base) + BigInt(c) * f) % m;
          CHECK(reduce_mod(fact(base, c, a), BigInt(m)) == expected);
        }
      }
    }
  }
}

TEST_CASE("reduce_mod is zero exactly when m divides an explicit value") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t v = rng() % 5000;
    const std::uint64_t m = 1 + rng() % 60;
    CHECK((reduce_mod(ex(v), m) == 0) == (v % m == 0));
  }
}

TEST_CASE("reduce_mod refuses residues beyond the explicit-product budget") {
  const BigInt arg = BigInt(kMaxExplicitFactorialArg) + 1;
  CHECK_THROWS_AS(reduce_mod(fact(0, 1, arg), arg + 1), IrreducibleModulus);
  // m <= arg never needs the product.
  CHECK(reduce_mod(fact(3, 1, pow2(128)), pow2(64)) == 3);
  CHECK_THROWS_AS(reduce_mod(ex(3), BigInt(0)), ContractViolation);
}

TEST_CASE("residue of a huge modulus falls back to big-integer products") {
  const BigInt m = pow2(100) + 1;
  CHECK(reduce_mod(fact(1, 1, 30), m) == (oracle::factorial(30) + 1) % m);
}

TEST_CASE("compare examples") {
  CHECK(compare(ex(5), 5) == std::strong_ordering::equal);
  CHECK(compare(fact(0, 1, pow2(128)), pow2(64)) == std::strong_ordering::greater);
  CHECK(compare(fact(3, 0, 9), 4) == std::strong_ordering::less);
}

TEST_CASE("compare agrees with materialized values") {
  for (std::uint64_t a = 1; a <= 15; ++a) {
    for (std::uint64_t c = 0; c <= 3; ++c) {
      for (std::uint64_t base : {0, 5, 100}) {
        const BigInt v = BigInt(base) + BigInt(c) * oracle::factorial(a);
        for (const BigInt& t : std::vector<BigInt>{BigInt(0), BigInt(v - 1), v, BigInt(v + 1), BigInt(1) << 40}) {
          if (t < 0) continue;
          const auto expected = v < t ? std::strong_ordering::less
                                      : (v == t ? std::strong_ordering::equal : std::strong_ordering::greater);
          CHECK(compare(fact(base, c, a), t) == expected);
        }
      }
    }
  }
}

TEST_CASE("compare never materializes huge factorials") {
  // 2^160! dwarfs any explicit threshold; this must return immediately.
  CHECK(compare(fact(pow2(160), 1, pow2(160)), pow2(4096)) == std::strong_ordering::greater);
  CHECK(compare(fact(0, 1, BigInt(100000)), pow2(64)) == std::strong_ordering::greater);
}

TEST_CASE("compare equal implies equal residues") {
  const RepeatCount k = fact(11, 2, 6);  // 11 + 1440
  CHECK(compare(k, 1451) == std::strong_ordering::equal);
  for (std::uint64_t m = 1; m < 100; ++m) CHECK(reduce_mod(k, m) == 1451 % m);
}

TEST_CASE("total_bits examples") {
  CHECK(total_bits(512, ex(3)) == ex(1536));
  const RepeatCount scaled = total_bits(32, fact(256, 2, 256));
  CHECK(scaled.form() == RepeatCount::Form::Factorial);
  CHECK(scaled.base() == 8192);
  CHECK(scaled.coeff() == 64);
  CHECK(scaled.arg() == 256);
}

TEST_CASE("total_bits residue cross-check") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t b = 8 * (1 + rng() % 64);
    const RepeatCount k = fact(rng() % 10000, rng() % 50, 1 + rng() % 20);
    const std::uint64_t m = 1 + rng() % 1000;
    CHECK(reduce_mod(total_bits(b, k), m) == ((b % m) * reduce_mod(k, m)) % m);
  }
}

TEST_CASE("bit_length_bounds examples") {
  const auto b2 = bit_length_bounds(2);
  CHECK(b2.lo == 2);
  CHECK(b2.hi == 8);
  const auto b8 = bit_length_bounds(8);
  CHECK(b8.lo == 896);
  CHECK(b8.hi == 2048);
  const auto b128 = bit_length_bounds(128);
  CHECK(b128.lo == pow2(127) * 127);
  CHECK(b128.hi == pow2(128) * 128);
  CHECK_THROWS_AS(bit_length_bounds(1), ContractViolation);
}

TEST_CASE("bit_length_bounds bracket log2((2^l)!) for l <= 10") {
  for (std::uint64_t ell = 2; ell <= 10; ++ell) {
    const BigInt f = oracle::factorial(std::uint64_t{1} << ell);
    const auto bounds = bit_length_bounds(ell);
    // lo < log2 f  <=>  2^lo < f ;  log2 f < hi  <=>  f < 2^hi
    CHECK(pow2(bounds.lo.convert_to<std::uint64_t>()) < f);
    CHECK(f < pow2(bounds.hi.convert_to<std::uint64_t>()));
  }
  // log2(256!) ~ 1683.996
  CHECK(log2_floor_plus(oracle::factorial(256)) == 1684);
}

TEST_CASE("semantic equality") {
  CHECK(fact(7, 0, 100) == ex(7));
  CHECK(ex(7) == fact(7, 0, 3));
  CHECK(fact(0, 1, 5) == ex(120));
  CHECK_FALSE(fact(0, 1, 5) == ex(121));
  CHECK(fact(0, 5, 4) == fact(0, 1, 5));         // 5 * 4! = 5!
  CHECK_FALSE(fact(0, 6, 4) == fact(0, 1, 5));
  CHECK(fact(24, 4, 4) == fact(0, 1, 5));        // 24 + 4*24 = 120
  CHECK(fact(120, 1, 5) == fact(0, 2, 5));
  CHECK_FALSE(fact(0, 1, pow2(64)) == fact(0, 1, pow2(64) + 1));
  CHECK(fact(pow2(12), 1, pow2(12)) == fact(pow2(12), 1, pow2(12)));
  CHECK_FALSE(fact(pow2(12), 1, pow2(12)) == fact(pow2(12), 2, pow2(12)));
}

TEST_CASE("semantic equality agrees with materialized values") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 400; ++i) {
    const std::uint64_t a0 = 1 + rng() % 7, a1 = 1 + rng() % 7;
    const std::uint64_t c0 = rng() % 4, c1 = rng() % 4;
    const std::uint64_t b0 = rng() % 50;
    const BigInt v0 = BigInt(b0) + c0 * oracle::factorial(a0);
    // Pick b1 so that the values coincide about half the time.
    const BigInt rest = BigInt(c1) * oracle::factorial(a1);
    BigInt b1 = (rng() % 2 == 0 && v0 >= rest) ? BigInt(v0 - rest) : BigInt(rng() % 50);
    const BigInt v1 = b1 + rest;
    CHECK((fact(b0, c0, a0) == fact(b1, c1, a1)) == (v0 == v1));
  }
}

TEST_CASE("decimal round trip and malformed input") {
  const BigInt v = pow2(200) + 12345;
  CHECK(parse_decimal(to_decimal(v)) == v);
  CHECK_THROWS_AS(parse_decimal("12a"), ContractViolation);
  CHECK_THROWS_AS(parse_decimal(""), ContractViolation);
  CHECK_THROWS_AS(RepeatCount::factorial(1, 1, 0), ContractViolation);
}

TEST_CASE("materialize and to_u64") {
  CHECK(fact(1, 2, 5).to_u64() == 241U);
  CHECK_FALSE(fact(0, 1, 21).to_u64().has_value());  // 21! > 2^64
  CHECK(fact(0, 1, 20).to_u64() == 2432902008176640000ULL);
  CHECK_FALSE(fact(0, 1, pow2(100)).to_u64().has_value());
}
