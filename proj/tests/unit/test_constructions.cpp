#include <doctest.h>

#include <numeric>

#include "bucklab/buck.hpp"
#include "bucklab/constructions.hpp"
#include "bucklab/errors.hpp"
#include "support/oracles.hpp"

using namespace bucklab;
using S = EventuallyPeriodicSet;
using oracle::ratio;

TEST_SUITE("constructions") {
  TEST_CASE("rational construction") {
    const S a = construct_rational(1, 2, 2);
    CHECK(a == unite(S::finite({0}), S::progression(4, 1)));
    CHECK(buck(k_fold_sumset(a, 2)) == ratio(1, 2));
    CHECK(construct_rational(0, 1, 3) == S::finite({0}));
    CHECK(buck(k_fold_sumset(construct_rational(0, 1, 3), 3)) == 0);
    CHECK(buck(k_fold_sumset(construct_rational(3, 4, 2), 2)) == ratio(3, 4));
    CHECK(check_rational(3, 4, 2, 2).passed());
    CHECK_THROWS_AS(construct_rational(3, 2, 1), ContractViolation);
    CHECK_THROWS_AS(check_rational(1, 2, 2, 3), ContractViolation);
  }

  TEST_CASE("rational k-fold sumsets against brute force") {
    for (std::uint64_t b = 1; b <= 4; ++b) {
      for (std::uint64_t a = 0; a <= b; ++a) {
        for (std::uint64_t n = 1; n <= 3; ++n) {
          const S set = construct_rational(a, b, n);
          const oracle::Flags base = oracle::flags_via_contains(set, 300);
          for (std::uint64_t k = 1; k <= n; ++k) {
            const oracle::Flags brute = oracle::k_fold_flags(base, k);
            CHECK(oracle::flags_via_contains(k_fold_sumset(set, k), 300) == brute);
          }
        }
      }
    }
  }

  TEST_CASE("irrational construction, first stage sets") {
    const IrrationalConstruction c = construct_irrational(IntervalReal::golden_conjugate(), 2, 3);
    REQUIRE(c.expansion.steps.size() >= 1);
    CHECK(c.expansion.steps[0].q == 7);
    CHECK(c.expansion.steps[0].beta == 2);
    const IrrationalStageSets s1 = c.stage_sets(1);
    CHECK(s1.x == S::residue_classes(7, {0, 1}));
    CHECK(s1.y == S::progression(7, 2));
    for (std::size_t i = 1; i <= c.staged.stage_count(); ++i) {
      const Stage& st = c.staged.stage(i);
      const Integer product = c.expansion.steps[i - 1].modulus_product;
      CHECK(buck(k_fold_sumset(c.stage_sets(i).y, 2)) == Rational(Integer(1), product));
      CHECK(Rational(Integer(1), product) <= Rational(Integer(1), pow2(i)));
      CHECK(st.outer == unite(st.inner, c.stage_sets(i).y));
    }
  }

  TEST_CASE("irrational intervals contain k alpha / n") {
    const oracle::Bracket alpha = oracle::standard_brackets()[1].second;
    const IrrationalConstruction c = construct_irrational(IntervalReal::golden_conjugate(), 2, 4);
    for (std::uint64_t k = 1; k <= 2; ++k) {
      const Rational scale = Rational(Integer(static_cast<unsigned long>(k)), Integer(2));
      for (std::size_t i = 1; i <= c.staged.stage_count(); ++i) {
        const DensityInterval d = c.staged.interval(i, k);
        CHECK(d.lo <= alpha.lo * scale);
        CHECK(alpha.hi * scale <= d.hi);
      }
      CHECK(check_irrational(c, k, c.staged.stage_count()).passed());
    }
    CHECK_THROWS_AS(check_irrational(c, 3, 1), ContractViolation);
    CHECK_THROWS(c.staged.stage(c.staged.stage_count() + 1));
  }

  TEST_CASE("sumset bound instances") {
    const auto first = SumsetBoundInstance::make(1, 1, 3, S::progression(3, 1));
    const Report r1 = verify_sumset_bound(first, 1);
    CHECK(r1.passed());
    CHECK(buck(first.s) == ratio(2, 3));

    const auto second = SumsetBoundInstance::make(2, 1, 5, S::finite({6}));
    for (std::uint64_t k = 1; k <= 2; ++k) {
      CHECK(verify_sumset_bound(second, k).passed());
      CHECK(buck(k_fold_sumset(second.s, k)) == ratio(k, 5));
    }

    const auto third = SumsetBoundInstance::make(1, 2, 5, S::progression(10, 7));
    CHECK(verify_sumset_bound(third, 1).passed());
    CHECK(buck(third.s) == ratio(2, 5) + ratio(1, 10));

    CHECK_THROWS_AS(SumsetBoundInstance::make(2, 3, 5, S::progression(5, 3)), ContractViolation);
    CHECK_THROWS_AS(SumsetBoundInstance::make(1, 1, 5, S::progression(5, 2)), ContractViolation);
    CHECK_THROWS_AS(SumsetBoundInstance::make(1, 1, 5, S::empty()), ContractViolation);
    CHECK_THROWS_AS(verify_sumset_bound(first, 2), ContractViolation);
  }

  TEST_CASE("translate with rational alpha") {
    const TranslateInstance t = construct_translate(ratio(1, 3), {0, 1});
    CHECK(t.k == 10);
    CHECK(t.h == 3);
    CHECK(t.c == unite(S::finite({0}), S::progression(3, 1)));
    CHECK(buck(t.a_plus_b) == ratio(1, 3));
    CHECK(t.report.passed());
    const oracle::Flags brute = oracle::sum_flags(oracle::flags_via_contains(t.a, 2000),
                                                  oracle::flags_via_contains(S::finite({0, 1}), 2000));
    CHECK(oracle::flags_via_contains(t.a_plus_b, 2000) == brute);
  }

  TEST_CASE("translate endpoints and shifted B") {
    const TranslateInstance one = construct_translate(Rational(1), {0, 5});
    CHECK(one.a == S::naturals());
    CHECK(one.a_plus_b == S::naturals());
    const TranslateInstance zero = construct_translate(Rational(0), {2});
    CHECK(zero.a_plus_b == S::empty());
    const TranslateInstance shifted = construct_translate(ratio(2, 5), {3, 4, 6});
    CHECK(shifted.shift == 3);
    CHECK(shifted.y == 3);
    CHECK(shifted.report.passed());
    CHECK(buck(shifted.a_plus_b) == ratio(2, 5));
    CHECK_THROWS_AS(construct_translate(ratio(3, 2), {0}), ContractViolation);
    CHECK_THROWS_AS(construct_translate(ratio(1, 2), {}), ContractViolation);
  }

  TEST_CASE("translate with irrational alpha") {
    const oracle::Bracket alpha = oracle::standard_brackets()[1].second;
    const TranslateInstance t = construct_translate(IntervalReal::golden_conjugate(), {0, 1}, 4);
    CHECK(t.report.passed());
    REQUIRE(t.sum_staged.has_value());
    CHECK(t.h >= 3);
    CHECK(ratio(t.h, t.k) < alpha.lo);
    CHECK(alpha.hi < ratio(t.h + 1, t.k));
    const DensityInterval d = t.sum_staged->interval(t.reported_stage, 1);
    CHECK(d.lo <= alpha.lo);
    CHECK(alpha.hi <= d.hi);
  }

  TEST_CASE("two-squares sieve") {
    const Bitmap q = two_squares_sieve(10);
    std::vector<std::uint64_t> members;
    q.for_each_set([&](std::size_t v) { members.push_back(v); });
    CHECK(members == std::vector<std::uint64_t>{0, 1, 2, 4, 5, 8, 9, 10});
    CHECK_FALSE(two_squares_sieve(3).test(3));
    const Bitmap big = two_squares_sieve(100);
    for (std::uint64_t n = 0; n <= 100; ++n) {
      bool hit = false;
      for (std::uint64_t a = 0; a <= n; ++a) hit = hit || (big.test(a) && big.test(n - a));
      CHECK(hit);
    }
  }

  TEST_CASE("basis construction") {
    const Report half = construct_basis(ratio(1, 2));
    CHECK(half.passed());
    REQUIRE(half.find_value("Y") != nullptr);
    CHECK(*half.find_value("Y") == unite(S::finite({0}), S::progression(2, 1)).to_string());

    const Report zero = construct_basis(Rational(0));
    CHECK(zero.passed());
    REQUIRE(zero.find_value("cover bound(8) for b*(Q)") != nullptr);
    CHECK(*zero.find_value("cover bound(8) for b*(Q)") == "5/8");
    REQUIRE(zero.find_value("gcd(A ∩ [0, 100])") != nullptr);
    CHECK(*zero.find_value("gcd(A ∩ [0, 100])") == "1");

    BasisOptions small;
    small.sieve_limit = 500;
    small.depth = 3;
    CHECK(construct_basis(IntervalReal::golden_conjugate(), small).passed());
  }

  TEST_CASE("four squares") {
    CHECK(four_squares(0) == std::array<std::uint64_t, 4>{0, 0, 0, 0});
    CHECK(four_squares(7) == std::array<std::uint64_t, 4>{1, 1, 1, 2});
    CHECK(four_squares(15) == std::array<std::uint64_t, 4>{1, 1, 2, 3});
    for (std::uint64_t h = 0; h <= 200; ++h) {
      std::array<std::uint64_t, 4> best{~0ULL, 0, 0, 0};
      for (std::uint64_t a = 0; a * a <= h && best[0] == ~0ULL; ++a)
        for (std::uint64_t b = 0; a * a + b * b <= h && best[0] == ~0ULL; ++b)
          for (std::uint64_t c = 0; a * a + b * b + c * c <= h && best[0] == ~0ULL; ++c)
            for (std::uint64_t d = 0; a * a + b * b + c * c + d * d <= h; ++d)
              if (a * a + b * b + c * c + d * d == h) {
                best = {a, b, c, d};
                break;
              }
      CHECK(four_squares(h) == best);
    }
  }

  TEST_CASE("counterexample witnesses") {
    CHECK(counterexample_witness(1, 0).passed());
    const Report w = counterexample_witness(5, 3);
    CHECK(w.passed());
    REQUIRE(w.find_value("n") != nullptr);
    CHECK(*w.find_value("n") == "20,21,21,21");
    CHECK_THROWS_AS(counterexample_witness(0, 0), ContractViolation);
    CHECK_THROWS_AS(counterexample_witness(4, 4), ContractViolation);
  }

  TEST_CASE("witnesses are real members of 2A for tiny classes") {
    // x = n! + n with n <= 6 keeps x^2 in 64 bits; check (x1^2 + x2^2) + (x3^2 + x4^2) ≡ h directly.
    for (std::uint64_t k = 1; k <= 2; ++k) {
      for (std::uint64_t h = 0; h < k; ++h) {
        const auto y = four_squares(h);
        std::uint64_t total = 0;
        for (std::uint64_t yi : y) {
          const std::uint64_t n = (h + 1) * k + yi;
          REQUIRE(n <= 6);
          std::uint64_t f = 1;
          for (std::uint64_t j = 2; j <= n; ++j) f *= j;
          total += (f + n) * (f + n);
        }
        CHECK(total % k == h);
      }
    }
  }

  TEST_CASE("sparsity bound") {
    const SparsityBound s = counterexample_sparsity(1000000000000ULL);
    CHECK(s.count == 10);
    CHECK(s.bound == 10000);
    CHECK(s.ratio == Rational(Integer(1), Integer(100000000)));
    CHECK(s.factorial_sup == 6561);
    const SparsityBound tiny = counterexample_sparsity(100);
    CHECK(tiny.count == 4);  // 1, 2, 4, 9
    CHECK(tiny.bound == 256);
    CHECK(counterexample_sparsity(1000000000).ratio <= counterexample_sparsity(1000000).ratio);
    CHECK_THROWS_AS(counterexample_sparsity(0), ContractViolation);
    const Report r = counterexample_report(6);
    CHECK(r.passed());
  }
}
