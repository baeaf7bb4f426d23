#include <doctest.h>

#include "bucklab/errors.hpp"
#include "bucklab/interval_real.hpp"
#include "support/oracles.hpp"

using namespace bucklab;

TEST_SUITE("interval_real") {
  TEST_CASE("sqrt enclosures are nested, halve, and match integer square roots") {
    const IntervalReal x = IntervalReal::sqrt_of(Rational(2));
    const oracle::Bracket ref = oracle::sqrt_bracket(2);
    Enclosure prev = x.enclosure(0);
    for (std::size_t j = 1; j < 60; ++j) {
      const Enclosure e = x.enclosure(j);
      CHECK(prev.lo <= e.lo);
      CHECK(e.hi <= prev.hi);
      CHECK(e.width() * 2 <= prev.width());
      CHECK(e.intersects({ref.lo, ref.hi}));
      prev = e;
    }
    CHECK(prev.width() < Rational(Integer(1), pow2(55)));
  }

  TEST_CASE("affine maps scale the enclosure") {
    const IntervalReal g = IntervalReal::golden_conjugate();
    const oracle::Bracket ref = oracle::standard_brackets()[1].second;
    const Enclosure e = g.enclosure(40);
    CHECK(e.lo <= ref.hi);
    CHECK(ref.lo <= e.hi);
    const Enclosure neg = g.affine(Rational(-3), Rational(2)).enclosure(40);
    CHECK(neg.lo <= Rational(2) - Rational(3) * ref.lo);
    CHECK(Rational(2) - Rational(3) * ref.hi <= neg.hi);
    CHECK(neg.lo <= neg.hi);
  }

  TEST_CASE("exact floors against integer square roots") {
    const IntervalReal g = IntervalReal::golden_conjugate();
    CHECK(exact_floor_scaled(g, Integer(2)) == 1);
    CHECK(exact_floor_scaled(g, Integer(7)) == 4);
    CHECK(exact_floor_scaled(g, Integer(1000000)) == 618033);
    const IntervalReal r2 = IntervalReal::sqrt_of(Rational(2));
    CHECK(exact_floor_scaled(r2, Integer(1000)) == 1414);
  }

  TEST_CASE("a rational on an integer boundary is undecidable, not wrong") {
    auto straddling = [](const Rational& centre) {
      return IntervalReal(
          [centre](std::size_t level) {
            const Rational e(Integer(1), pow2(level + 1));
            return Enclosure{centre - e, centre + e};
          },
          "straddling " + centre.to_string());
    };
    CHECK_THROWS_AS(exact_floor_scaled(straddling(Rational(Integer(1), Integer(2))), Integer(2), 64),
                    UndecidableAtPrecision);
    CHECK_THROWS_AS(certify_open_unit(straddling(Rational(1)), 64), UndecidableAtPrecision);
    // One-sided enclosures of an exact value still decide correctly.
    CHECK(exact_floor_scaled(IntervalReal::sqrt_of(Rational(Integer(1), Integer(4))), Integer(2)) == 1);
    CHECK_THROWS_AS(certify_open_unit(IntervalReal::sqrt_of(Rational(4))), ContractViolation);
  }

  TEST_CASE("certify_open_unit and refine_until") {
    const Enclosure e = certify_open_unit(IntervalReal::golden_conjugate());
    CHECK(e.inside_open_unit());
    const auto narrow = refine_until(IntervalReal::golden_conjugate(),
                                     [](const Enclosure& x) { return x.width() < Rational(Integer(1), Integer(1000)); });
    REQUIRE(narrow.has_value());
    CHECK(narrow->width() < Rational(Integer(1), Integer(1000)));
    const auto never = refine_until(IntervalReal::golden_conjugate(), [](const Enclosure&) { return false; }, 8);
    CHECK_FALSE(never.has_value());
  }

  TEST_CASE("enclosure_with_width") {
    const Rational w(Integer(1), Integer(1000000));
    CHECK(enclosure_with_width(IntervalReal::sqrt_of(Rational(3)), w).width() <= w);
  }

  TEST_CASE("digit streams") {
    const IntervalReal x = IntervalReal::from_digits(
        10, [](std::size_t j) -> std::optional<unsigned> { return j <= 3 ? std::optional<unsigned>(j) : std::nullopt; },
        "0.123");
    const Enclosure e = x.enclosure(3);
    CHECK(e.lo == Rational(Integer(123), Integer(1000)));
    CHECK(e.hi == Rational(Integer(124), Integer(1000)));
    CHECK_THROWS_AS(x.enclosure(4), UndecidableAtPrecision);
    CHECK_THROWS_AS(IntervalReal::from_digits(1, [](std::size_t) { return std::optional<unsigned>(0); }, "bad"),
                    ContractViolation);
  }

  TEST_CASE("negative radicands are rejected") {
    CHECK_THROWS_AS(IntervalReal::sqrt_of(Rational(-1)), ContractViolation);
  }
}
