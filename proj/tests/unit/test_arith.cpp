#include <doctest.h>

#include <vector>

#include "bucklab/arith.hpp"
#include "bucklab/errors.hpp"

using namespace bucklab;

TEST_SUITE("arith") {
  TEST_CASE("rationals are kept in lowest terms") {
    const Rational r(Integer(6), Integer(-8));
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 4);
    CHECK(r.to_string() == "-3/4");
    CHECK(Rational(7).to_string() == "7/1");
    CHECK(Rational(0).to_string() == "0/1");
  }

  TEST_CASE("zero denominators are rejected") {
    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), ContractViolation);
    CHECK_THROWS_AS(Rational(1) / Rational(0), ContractViolation);
  }

  TEST_CASE("parse accepts p/q and integers") {
    CHECK(Rational::parse("3/6") == Rational(Integer(1), Integer(2)));
    CHECK(Rational::parse("-5") == Rational(-5));
    CHECK(Rational::parse("12/4").is_integer());
    CHECK_THROWS(Rational::parse(""));
    CHECK_THROWS(Rational::parse("1/"));
    CHECK_THROWS(Rational::parse("0.5"));
    CHECK_THROWS(Rational::parse("1/0"));
  }

  TEST_CASE("floor, ceil and ordering") {
    const Rational r(Integer(-7), Integer(2));
    CHECK(r.floor() == -4);
    CHECK(r.ceil() == -3);
    CHECK(r.abs() == Rational(Integer(7), Integer(2)));
    CHECK(Rational(Integer(1), Integer(3)) < Rational(Integer(1), Integer(2)));
  }

  TEST_CASE("decimal rendering rounds exactly") {
    CHECK(Rational(Integer(1), Integer(3)).to_decimal(4) == "0.3333");
    CHECK(Rational(Integer(2), Integer(3)).to_decimal(4) == "0.6667");
    CHECK(Rational(Integer(-1), Integer(8)).to_decimal(2) == "-0.13");
  }

  TEST_CASE("crt on coprime moduli") {
    const std::vector<Congruence> cs = {{2, 3}, {3, 5}, {2, 7}};
    const Congruence c = crt_solve(cs);
    CHECK(c.modulus == 105);
    CHECK(c.residue == 23);
    for (const auto& [r, m] : cs) CHECK(c.residue % m == r);
  }

  TEST_CASE("crt rejects shared factors") {
    const std::vector<Congruence> cs = {{1, 4}, {3, 6}};
    CHECK_THROWS_AS(crt_solve(cs), ContractViolation);
  }

  TEST_CASE("integer helpers") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(isqrt(Integer(99)) == 9);
    CHECK(isqrt(Integer(100)) == 10);
    CHECK(gcd(Integer(12), Integer(18)) == 6);
    CHECK(lcm(Integer(4), Integer(6)) == 12);
    CHECK(pow2(10) == 1024);
    CHECK(gcd_u64(0, 5) == 5);
    CHECK(lcm_u64(6, 10) == 30);
  }

  TEST_CASE("checked u64 arithmetic reports overflow") {
    CHECK(checked_mul_u64(1ULL << 31, 1ULL << 31) == 1ULL << 62);
    CHECK_THROWS_AS(checked_mul_u64(1ULL << 32, 1ULL << 32), CapacityExceeded);
    CHECK_THROWS_AS(checked_add_u64(~0ULL, 1), CapacityExceeded);
    CHECK_THROWS_AS(to_u64(Integer(-1)), CapacityExceeded);
  }
}
