// One line per acceptance criterion: "criterion N: PASS|FAIL (seconds, limit) summary".
// Exit status is non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bucklab/buck.hpp"
#include "bucklab/constructions.hpp"
#include "bucklab/estimators.hpp"
#include "bucklab/expansion.hpp"
#include "bucklab/periodic_set.hpp"
#include "support/expansion_oracle.hpp"
#include "support/oracles.hpp"

using namespace bucklab;
using S = EventuallyPeriodicSet;
using oracle::Flags;
using oracle::ratio;

namespace {

struct Outcome {
  bool passed = true;
  std::string summary;
  std::string first_failure;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) first_failure = what;
    passed = passed && ok;
  }
};

IntervalReal named_irrational(const std::string& name) {
  if (name == "sqrt(2)/2") return IntervalReal::sqrt_of(Rational(Integer(1), Integer(2)));
  if (name == "golden-conjugate") return IntervalReal::golden_conjugate();
  return IntervalReal::sqrt_of(Rational(3)).affine(Rational(1), Rational(-1));
}

// Density read off the last `period` positions of a flag vector, after
// checking the final stretch is periodic.
bool flag_density(const Flags& f, std::size_t period, Rational& out) { return oracle::tail_density(f, period, out); }

// ---- 1 ---------------------------------------------------------------------

Outcome criterion_1() {
  Outcome o;
  std::size_t cases = 0;
  for (std::uint64_t b = 1; b <= 8; ++b) {
    for (std::uint64_t a = 0; a <= b; ++a) {
      for (std::uint64_t n = 1; n <= 5; ++n) {
        const S set = construct_rational(a, b, n);
        const std::size_t period = n * b;
        const std::size_t window = 8 * period + 16;
        const Flags base = oracle::flags_via_contains(set, window);
        Flags brute = base;
        for (std::uint64_t k = 1; k <= n; ++k) {
          if (k > 1) brute = oracle::sum_flags(brute, base);
          const S kset = k_fold_sumset(set, k);
          const Rational target = ratio(k * a, n * b);
          Rational measured;
          const std::string tag = std::to_string(a) + "/" + std::to_string(b) + " n=" + std::to_string(n) +
                                  " k=" + std::to_string(k);
          o.require(buck(kset) == target && buck_lower(kset) == target, tag + ": buck(kA) != ka/(nb)");
          o.require(flag_density(brute, period, measured) && measured == target, tag + ": brute density");
          o.require(oracle::flags_via_contains(kset, window) == brute, tag + ": kA membership");
          ++cases;
        }
      }
    }
  }
  o.summary = std::to_string(cases) + " (a, b, n, k) cases, buck(kA) = ka/(nb) exactly";
  return o;
}

// ---- 2 ---------------------------------------------------------------------

Outcome criterion_2() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::uint64_t> md(1, 30), pct(0, 99), small(0, 200);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t m = md(rng);
    std::vector<std::uint64_t> h;
    for (std::uint64_t r = 0; r < m; ++r) {
      if (pct(rng) < 45) h.push_back(r);
    }
    const S s = S::residue_classes(m, h);
    const Rational expected = ratio(h.size(), m);
    std::uint64_t count = 0;
    for (std::uint64_t n = 1000 * m; n < 1001 * m; ++n) count += s.contains(n) ? 1 : 0;
    const std::string tag = "instance " + std::to_string(i);
    o.require(ratio(count, m) == expected, tag + ": window count");
    o.require(buck_upper(s) == expected && buck_lower(s) == expected, tag + ": buck(mN + H) != |H|/m");

    std::vector<std::uint64_t> finite;
    for (int j = 0; j < 6; ++j) finite.push_back(small(rng));
    const S f = S::finite(finite);
    o.require(buck_upper(f) == 0 && buck_lower(f) == 0, tag + ": finite set density");
    const S plus = unite(s, f);
    const S minus = difference(s, f);
    o.require(buck_upper(plus) == expected && buck_lower(plus) == expected, tag + ": added members change density");
    o.require(buck_upper(minus) == expected && buck_lower(minus) == expected,
              tag + ": removed members change density");
  }
  o.summary = "500 instances mN + H with m <= 30: |H|/m, finite sets 0, perturbations invariant";
  return o;
}

// ---- 3 ---------------------------------------------------------------------

Outcome criterion_3() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::uint64_t> md(2, 30), pct(0, 99);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t m = md(rng);
    std::vector<std::uint64_t> ra, rb;
    for (std::uint64_t r = 0; r < m; ++r) (pct(rng) < 50 ? ra : rb).push_back(r);
    const S a = S::residue_classes(m, ra);
    const S b = S::residue_classes(m, rb);
    const oracle::RawSet rx = oracle::random_raw(rng, 12, 4, 60);
    const oracle::RawSet ry = oracle::random_raw(rng, 12, 4, 60);
    const S x = intersect(rx.build(), a);
    const S y = intersect(ry.build(), b);
    const AdditivityResult res = additivity_disjoint(x, y, a, b);

    // Independent value: members of X ∪ Y in one full common period far out.
    const std::uint64_t period = m * rx.q * ry.q;
    const std::uint64_t from = 64 * period;
    std::uint64_t cx = 0, cy = 0;
    for (std::uint64_t n = from; n < from + period; ++n) {
      const bool in_a = std::find(ra.begin(), ra.end(), n % m) != ra.end();
      cx += (in_a && rx.contains(n)) ? 1 : 0;
      cy += (!in_a && ry.contains(n)) ? 1 : 0;
    }
    const Rational dx = ratio(cx, period), dy = ratio(cy, period);
    const std::string tag = "instance " + std::to_string(i);
    o.require(res.upper == dx + dy, tag + ": b*(X ∪ Y) != counted density");
    o.require(res.lower == dx + dy, tag + ": b_*(X ∪ Y) != counted density");
    o.require(res.upper == buck_upper(x) + buck_upper(y), tag + ": upper split");
    o.require(res.lower == buck_lower(x) + buck_lower(y), tag + ": lower split");
    o.require(res.report.passed(), tag + ": report");
  }
  o.summary = "200 disjoint-cover instances split additively for b* and b_*";
  return o;
}

// ---- 4 ---------------------------------------------------------------------

Outcome criterion_4() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::size_t checked = 0;
  for (int i = 0; i < 200; ++i) {
    std::uint64_t q, t, n;
    do {
      q = std::uniform_int_distribution<std::uint64_t>(2, 50)(rng);
      t = std::uniform_int_distribution<std::uint64_t>(1, q - 1)(rng);
      n = std::uniform_int_distribution<std::uint64_t>(1, 4)(rng);
    } while (n * t >= q);
    const oracle::RawSet base = oracle::random_raw(rng, 4, 2, 50);
    S v = affine(base.build(), q, t);
    if (v.is_empty()) v = S::finite({q + t});
    const auto inst = SumsetBoundInstance::make(n, t, q, v);

    const std::size_t period = q * base.q;
    const std::size_t window = 8 * period + 4 * q * (base.t + 2) + 64;
    const Flags fs = oracle::flags_via_contains(inst.s, window);
    const Flags fv = oracle::flags_via_contains(v, window);
    Flags ks = fs, kv = fv;
    for (std::uint64_t k = 1; k <= n; ++k) {
      if (k > 1) {
        ks = oracle::sum_flags(ks, fs);
        kv = oracle::sum_flags(kv, fv);
      }
      const std::string tag = "q=" + std::to_string(q) + " t=" + std::to_string(t) + " k=" + std::to_string(k);
      const S kset = k_fold_sumset(inst.s, k);
      const Rational lower = buck_lower(kset), upper = buck_upper(kset);
      const Rational base_density = ratio(k * t, q);
      Rational measured_s, measured_v;
      o.require(flag_density(ks, period, measured_s), tag + ": kS not periodic in window");
      o.require(flag_density(kv, period, measured_v), tag + ": kV not periodic in window");
      o.require(base_density <= lower, tag + ": kt/q <= b_*(kS)");
      o.require(lower <= upper, tag + ": b_*(kS) <= b*(kS)");
      o.require(upper == base_density + buck(k_fold_sumset(v, k)), tag + ": b*(kS) = kt/q + b*(kV)");
      o.require(upper <= ratio(k * t + 1, q), tag + ": b*(kS) <= (kt+1)/q");
      o.require(measured_s == upper && measured_v == upper - base_density, tag + ": brute densities");
      o.require(oracle::flags_via_contains(kset, window) == ks, tag + ": kS membership");
      o.require(verify_sumset_bound(inst, k).passed(), tag + ": report");
      ++checked;
    }
  }
  o.summary = "200 instances (" + std::to_string(checked) + " (instance, k) pairs), q <= 50: chain holds exactly";
  return o;
}

// ---- 5 ---------------------------------------------------------------------

Outcome criterion_5() {
  Outcome o;
  std::ostringstream lengths;
  for (const auto& [name, bracket] : oracle::standard_brackets()) {
    for (std::uint64_t n = 1; n <= 3; ++n) {
      const Expansion e = expand(named_irrational(name), n, 8);
      const std::string tag = name + " n=" + std::to_string(n);
      o.require(!e.steps.empty(), tag + ": no steps");
      o.require(e.steps.size() == 8 || e.budget_reached, tag + ": stopped without reaching the cap");
      const std::string audit = oracle::audit_expansion(e, bracket);
      o.require(audit.empty(), tag + ": " + audit);
      o.require(check_expansion(e).passed(), tag + ": check_expansion");
      lengths << " " << e.steps.size();
    }
  }
  o.summary = "3 alphas x n in {1,2,3}, depth 8 under the 10^9 cap; steps:" + lengths.str();
  return o;
}

// ---- 6 ---------------------------------------------------------------------

Outcome criterion_6() {
  Outcome o;
  Rational worst(0);
  for (const auto& [name, bracket] : oracle::standard_brackets()) {
    const IrrationalConstruction c = construct_irrational(named_irrational(name), 2, 5);
    const std::size_t stages = std::min<std::size_t>(5, c.staged.stage_count());
    o.require(stages >= 1, name + ": no stages");
    for (std::uint64_t k = 1; k <= 2; ++k) {
      const Rational scale = ratio(k, 2);
      for (std::size_t i = 1; i <= stages; ++i) {
        const std::string tag = name + " k=" + std::to_string(k) + " stage " + std::to_string(i);
        const DensityInterval d = c.staged.interval(i, k);
        o.require(d.lo <= bracket.lo * scale && bracket.hi * scale <= d.hi, tag + ": k alpha / n outside interval");
        if (i > 1) {
          const DensityInterval prev = c.staged.interval(i - 1, k);
          o.require(prev.lo <= d.lo && d.hi <= prev.hi, tag + ": not nested");
        }
        Rational previous_sum(0);
        for (std::size_t j = 1; j < i; ++j) {
          previous_sum += Rational(Integer(2 * c.expansion.steps[j - 1].beta), c.expansion.steps[j - 1].modulus_product);
        }
        // sum_{j >= i} n! beta_j / (q_1...q_j) = alpha - S_{i-1}.
        const Rational bound = (bracket.hi - previous_sum) + Rational(Integer(2), pow2(i));
        o.require(d.width() <= bound, tag + ": width above the stage bound");
        if (i == stages) worst = std::max(worst, d.width());
      }
      o.require(check_irrational(c, k, stages).passed(), name + ": check_irrational");
    }
  }
  o.summary = "3 alphas, n = 2, stages <= 5, k in {1,2}: nested, contain k alpha / n, within bound; widest final " +
              worst.to_decimal(8);
  return o;
}

// ---- 7 ---------------------------------------------------------------------

Outcome criterion_7() {
  Outcome o;
  const TranslateInstance t = construct_translate(ratio(1, 3), {0, 1});
  o.require(t.k == 10 && t.h == 3, "1/3: k, h");
  o.require(buck(t.a_plus_b) == ratio(1, 3) && buck_lower(t.a_plus_b) == ratio(1, 3), "1/3: b(A + B)");
  const std::size_t window = 4000;
  const Flags fa = oracle::flags_via_contains(t.a, window);
  const Flags fb = oracle::flags_via_contains(S::finite({0, 1}), window);
  const Flags sum = oracle::sum_flags(fa, fb);
  Flags expected(window, 0);
  for (std::size_t n = 0; n < window; ++n) {
    if (n % t.k < t.h) expected[n] = 1;
    if (n >= t.h && (n - t.h) % t.k == 0 && t.c.contains((n - t.h) / t.k)) expected[n] = 1;
  }
  o.require(sum == expected, "1/3: brute A + B differs from (kN + [0, h-1]) ∪ (kC + h)");
  o.require(oracle::flags_via_contains(t.a_plus_b, window) == sum, "1/3: A + B membership");
  o.require(t.a_plus_b == unite(S::residue_classes(t.k, {0, 1, 2}), affine(t.c, t.k, t.h)), "1/3: set equality");
  Rational measured;
  o.require(flag_density(sum, 30, measured) && measured == ratio(1, 3), "1/3: brute density");
  o.require(t.report.passed(), "1/3: report");

  const oracle::Bracket alpha = oracle::standard_brackets()[1].second;
  const TranslateInstance g = construct_translate(IntervalReal::golden_conjugate(), {0, 1}, 4);
  o.require(g.sum_staged.has_value() && g.sum_staged->stage_count() >= 4, "golden: fewer than 4 stages");
  Rational width(1);
  if (g.sum_staged && g.sum_staged->stage_count() >= 4) {
    const DensityInterval d = g.sum_staged->interval(4, 1);
    width = d.width();
    o.require(d.lo <= alpha.lo && alpha.hi <= d.hi, "golden: stage 4 interval misses alpha");
    o.require(width < ratio(5, 100), "golden: stage 4 width >= 0.05");
  }
  o.require(g.report.passed(), "golden: report");
  o.summary = "1/3 with B = {0,1}: k = 10, h = 3, b(A + B) = 1/3, decomposition exact; golden stage-4 width " +
              width.to_decimal(8);
  return o;
}

// ---- 8 ---------------------------------------------------------------------

Outcome criterion_8() {
  Outcome o;
  const std::uint64_t limit = 10000;
  Flags q(limit + 1, 0);
  for (std::uint64_t x = 0; x * x <= limit; ++x) {
    for (std::uint64_t y = 0; x * x + y * y <= limit; ++y) q[x * x + y * y] = 1;
  }
  Flags a = q;
  for (std::uint64_t n = 0; n <= limit; ++n) {
    if (n == 0 || n % 2 == 1) a[n] = 1;  // Y = {0} ∪ (2N + 1)
  }
  const Flags two_a = oracle::sum_flags(a, a);
  o.require(std::all_of(two_a.begin(), two_a.end(), [](char c) { return c != 0; }), "2A misses a member of [0, 10^4]");
  o.require(a[0] != 0, "0 not in A");
  std::uint64_t g = 0;
  for (std::uint64_t n = 0; n <= 100; ++n) {
    if (a[n]) g = std::gcd(g, n);
  }
  o.require(g == 1, "gcd(A ∩ [0, 100]) != 1");

  const Report r = construct_basis(ratio(1, 2));
  o.require(r.passed(), "basis report");
  const auto profile = sums_of_two_squares_residues();
  Rational previous(2);
  std::ostringstream bounds;
  for (std::uint64_t m : {4, 8, 72, 5544}) {
    std::vector<char> hit(m, 0);
    for (std::uint64_t x = 0; x < m; ++x) {
      for (std::uint64_t y = 0; y < m; ++y) hit[(x * x + y * y) % m] = 1;
    }
    const Rational expected = ratio(static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), 1)), m);
    const Rational bound = modulus_cover_bound(profile, m);
    o.require(bound == expected, "bound(" + std::to_string(m) + ") differs from residue enumeration");
    o.require(bound <= previous, "bound(" + std::to_string(m) + ") increases");
    const std::string* reported = r.find_value("cover bound(" + std::to_string(m) + ") for b*(Q)");
    o.require(reported != nullptr && *reported == bound.to_string(), "reported bound(" + std::to_string(m) + ")");
    previous = bound;
    bounds << " " << bound.to_string();
  }
  o.require(modulus_cover_bound(profile, 8) == ratio(5, 8), "bound(8) != 5/8");
  o.summary = "2A ⊇ [0, 10^4], 0 ∈ A, gcd 1; cover bounds 4|8|72|5544:" + bounds.str();
  return o;
}

// ---- 9 ---------------------------------------------------------------------

Outcome criterion_9() {
  Outcome o;
  std::size_t classes = 0;
  for (std::uint64_t k = 1; k <= 20; ++k) {
    for (std::uint64_t h = 0; h < k; ++h) {
      // Lexicographically least four-square representation, by search.
      std::array<std::uint64_t, 4> y{};
      bool found = false;
      for (std::uint64_t a = 0; a * a <= h && !found; ++a)
        for (std::uint64_t b = 0; a * a + b * b <= h && !found; ++b)
          for (std::uint64_t c = 0; a * a + b * b + c * c <= h && !found; ++c)
            for (std::uint64_t d = 0; a * a + b * b + c * c + d * d <= h && !found; ++d)
              if (a * a + b * b + c * c + d * d == h) {
                y = {a, b, c, d};
                found = true;
              }
      std::uint64_t total = 0;
      for (std::uint64_t yi : y) {
        const std::uint64_t n = (h + 1) * k + yi;
        std::uint64_t f = 1 % k;
        for (std::uint64_t j = 2; j <= n; ++j) f = f * j % k;
        const std::uint64_t x = (f + n) % k;
        total = (total + x * x) % k;
      }
      const std::string tag = std::to_string(k) + "N + " + std::to_string(h);
      o.require(found && total == h, tag + ": congruence");
      o.require(counterexample_witness(k, h).passed(), tag + ": witness report");
      ++classes;
    }
  }
  // |V ∩ [1, 10^6]| with V = {n! + n}: n = 0..9.
  std::uint64_t count = 0;
  Integer f = 1;
  for (unsigned long n = 0; n < 20; ++n) {
    if (n > 0) f *= n;
    if (f + n <= 1000000) ++count;
  }
  const Integer bound = Integer(static_cast<unsigned long>(count)) * count * count * count;
  const Rational ratio_bound(bound, Integer("1000000000000"));
  o.require(ratio_bound <= ratio(1, 10000000), "sparsity ratio above 10^-7");
  const SparsityBound s = counterexample_sparsity(1000000000000ULL);
  o.require(s.count == count && s.bound == bound && s.ratio == ratio_bound, "sparsity bound differs from the scan");
  const Report r = counterexample_report(20);
  o.require(r.passed(), "counterexample report");
  o.require(r.find_value("b*(2A)") && *r.find_value("b*(2A)") == "1/1", "b*(2A) certificate missing");
  o.require(r.find_value("b_*(2A)") && *r.find_value("b_*(2A)") == "0/1", "b_*(2A) certificate missing");
  o.summary = std::to_string(classes) + " classes with k <= 20 meet 2A; ratio bound at 10^12 = " +
              ratio_bound.to_string();
  return o;
}

// ---- 10 --------------------------------------------------------------------

Outcome criterion_10() {
  Outcome o;
  const FactorialTable t = dstar_counterexample(3);
  Rational previous(0);
  std::ostringstream ratios;
  for (unsigned long n = 1; n <= 3; ++n) {
    Integer x = 0;
    for (unsigned long j = 1; j <= n; ++j) x += 2 * j * oracle::factorial(4 * j) + 1;
    const Integer at = oracle::factorial(4 * n + 1);
    const Rational expected(x, at);
    const FactorialCheckpoint* row = nullptr;
    for (const auto& r : t.rows) {
      if (r.at == at) row = &r;
    }
    const std::string tag = "(" + std::to_string(4 * n + 1) + ")!";
    o.require(row != nullptr, tag + ": checkpoint missing");
    if (row == nullptr) continue;
    o.require(row->count_x == x, tag + ": |X ∩ [1, N]| differs from closed form");
    o.require(row->ratio_x == expected, tag + ": ratio differs from closed form");
    o.require(factorial_interval_count(false, 0, at) == x, tag + ": factorial_interval_count");
    o.require(previous < expected && expected < ratio(1, 2), tag + ": not increasing toward 1/2");
    previous = expected;
    ratios << " " << expected.to_decimal(6);
  }
  o.require(t.report.passed(), "factorial report (Buck additivity on X, Y)");
  o.require(t.report.find_check("b*(X ∪ Y) = b*(X) + b*(Y)") && t.report.find_check("b*(X ∪ Y) = b*(X) + b*(Y)")->passed,
            "upper Buck additivity");
  o.require(t.report.find_check("b_*(X ∪ Y) = b_*(X) + b_*(Y)") &&
                t.report.find_check("b_*(X ∪ Y) = b_*(X) + b_*(Y)")->passed,
            "lower Buck additivity");
  o.summary = "X ratios at (4n+1)!, n = 1..3:" + ratios.str() + "; Buck splits over 2N, 2N+1";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, 60, criterion_1}, {2, 10, criterion_2},  {3, 10, criterion_3}, {4, 60, criterion_4},
      {5, 30, criterion_5}, {6, 120, criterion_6}, {7, 30, criterion_7}, {8, 30, criterion_8},
      {9, 10, criterion_9}, {10, 5, criterion_10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.first_failure = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) {
      o.require(false, "runtime above the limit");
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", seconds, c.limit_seconds);
    std::cout << "criterion " << c.id << ": " << (o.passed ? "PASS" : "FAIL") << " (" << timing << ") "
              << (o.passed ? o.summary : o.first_failure) << "\n";
    failures += o.passed ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << "\n";
  return failures == 0 ? 0 : 1;
}
