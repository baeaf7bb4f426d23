#include "bucklab/estimators.hpp"

#include <algorithm>

#include "bucklab/buck.hpp"
#include "bucklab/errors.hpp"

namespace bucklab {

namespace {

Integer big(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

Rational ratio(const Integer& p, const Integer& q) { return Rational(p, q); }

}  // namespace

std::uint64_t MembershipOracle::count_in(std::uint64_t lo, std::uint64_t hi) const {
  if (lo > hi) return 0;
  if (count) return count(lo, hi);
  std::uint64_t total = 0;
  for (std::uint64_t v = lo;; ++v) {
    if (contains(v)) ++total;
    if (v == hi) break;
  }
  return total;
}

MembershipOracle oracle_of(const EventuallyPeriodicSet& s) {
  return MembershipOracle{[s](std::uint64_t n) { return s.contains(n); },
                          [s](std::uint64_t lo, std::uint64_t hi) { return count_in_range(s, lo, hi); },
                          s.to_string()};
}

MembershipOracle oracle_of(std::function<bool(std::uint64_t)> contains, std::string description) {
  return MembershipOracle{std::move(contains), {}, std::move(description)};
}

Rational prefix_ratio(const MembershipOracle& s, std::uint64_t n) {
  if (n == 0) throw ContractViolation("prefix ratio needs N >= 1");
  return ratio(big(s.count_in(1, n)), big(n));
}

std::pair<Rational, Rational> window_extrema(const MembershipOracle& s, std::uint64_t n, std::uint64_t length) {
  if (length == 0 || length > n) throw ContractViolation("window length must lie in [1, N]");
  std::uint64_t current = s.count_in(1, length);
  std::uint64_t lo = current;
  std::uint64_t hi = current;
  for (std::uint64_t start = 2; start + length - 1 <= n; ++start) {
    if (s.contains(start - 1)) --current;
    if (s.contains(start + length - 1)) ++current;
    lo = std::min(lo, current);
    hi = std::max(hi, current);
  }
  return {ratio(big(lo), big(length)), ratio(big(hi), big(length))};
}

namespace {

// Over [a, b): q = product of m, all = q * sum 1/m, part = q * sum over members.
struct HarmonicSplit {
  Integer q;
  Integer all;
  Integer part;
};

HarmonicSplit harmonic_split(const MembershipOracle& s, std::uint64_t a, std::uint64_t b) {
  if (b - a <= 16) {
    HarmonicSplit out{1, 0, 0};
    for (std::uint64_t m = a; m < b; ++m) {
      const Integer mm = big(m);
      out.all = out.all * mm + out.q;
      out.part = out.part * mm + (s.contains(m) ? out.q : Integer(0));
      out.q *= mm;
    }
    return out;
  }
  const std::uint64_t mid = a + (b - a) / 2;
  const HarmonicSplit l = harmonic_split(s, a, mid);
  const HarmonicSplit r = harmonic_split(s, mid, b);
  return HarmonicSplit{l.q * r.q, l.all * r.q + r.all * l.q, l.part * r.q + r.part * l.q};
}

}  // namespace

Rational log_ratio(const MembershipOracle& s, std::uint64_t n) {
  if (n == 0) throw ContractViolation("log ratio needs N >= 1");
  const HarmonicSplit h = harmonic_split(s, 1, n + 1);
  return ratio(h.part, h.all);
}

Estimator prefix_ratio_estimator() { return {"prefix", prefix_ratio}; }

Estimator log_ratio_estimator() { return {"log", log_ratio}; }

Estimator estimator_named(const std::string& name) {
  if (name == "prefix") return prefix_ratio_estimator();
  if (name == "log") return log_ratio_estimator();
  throw ContractViolation("unknown estimator '" + name + "' (expected prefix or log)");
}

Report sandwich_check(const StagedSet& s, const Estimator& estimator, std::size_t stage, std::uint64_t n,
                      const Rational& slack) {
  Report r;
  r.title = "sandwich check: " + estimator.name + " estimate of " + s.description() + ", stage " +
            std::to_string(stage) + ", N = " + std::to_string(n);
  const Stage& st = s.stage(stage);
  const Rational inner_buck = buck(st.inner);
  const Rational outer_buck = buck(st.outer);
  const Rational inner_est = estimator.evaluate(oracle_of(st.inner), n);
  const Rational outer_est = estimator.evaluate(oracle_of(st.outer), n);
  r.value("buck(inner)", inner_buck.to_string());
  r.value("buck(outer)", outer_buck.to_string());
  r.value("estimate(inner)", inner_est.to_string());
  r.value("estimate(outer)", outer_est.to_string());
  r.value("estimate(inner) ~", inner_est.to_decimal());
  r.value("estimate(outer) ~", outer_est.to_decimal());
  r.value("slack", slack.to_string());
  r.value("lower margin", (inner_est - (inner_buck - slack)).to_string());
  r.value("upper margin", ((outer_buck + slack) - outer_est).to_string());
  r.check("estimate(inner) <= estimate(outer)", inner_est <= outer_est);
  r.check("estimate(inner) >= buck(inner) - slack", inner_est >= inner_buck - slack,
          inner_est.to_decimal() + " vs " + (inner_buck - slack).to_decimal());
  r.check("estimate(outer) <= buck(outer) + slack", outer_est <= outer_buck + slack,
          outer_est.to_decimal() + " vs " + (outer_buck + slack).to_decimal());
  return r;
}

// ---- factorial intervals ---------------------------------------------------

namespace {

// Members of [a, b] with the given parity.
Integer parity_count(const Integer& a, const Integer& b, bool odd) {
  if (b < a) return 0;
  Integer hi, lo;
  if (odd) {
    mpz_fdiv_q_2exp(hi.get_mpz_t(), Integer(b + 1).get_mpz_t(), 1);
    mpz_fdiv_q_2exp(lo.get_mpz_t(), a.get_mpz_t(), 1);
  } else {
    mpz_fdiv_q_2exp(hi.get_mpz_t(), b.get_mpz_t(), 1);
    mpz_fdiv_q_2exp(lo.get_mpz_t(), Integer(a - 1).get_mpz_t(), 1);
  }
  return hi - lo;
}

struct Run {
  Integer start;
  Integer end;
  std::uint64_t step;  // 1: every integer, 2: one parity
};

// Residues mod m hit by the first min(|run|, m) members of the run.
Bitmap run_residues(const Run& run, std::uint64_t m) {
  Bitmap out(m);
  const Integer members = run.step == 1 ? Integer(run.end - run.start + 1) : Integer((run.end - run.start) / 2 + 1);
  const std::uint64_t take = members < big(m) ? to_u64(members) : m;
  Integer first = run.start % big(m);
  std::uint64_t r = to_u64(first);
  for (std::uint64_t i = 0; i < take; ++i) {
    out.set(r);
    r = (r + run.step) % m;
  }
  return out;
}

// inf over moduli m <= max_m of |residues a cover mod m must contain| / m,
// where the runs recur with unbounded length.
Rational cover_lower_bound(const std::vector<Run>& runs, std::uint64_t max_m, Report& r, const std::string& name) {
  Rational best(1);
  for (std::uint64_t m = 1; m <= max_m; ++m) {
    Bitmap needed(m);
    for (const Run& run : runs) needed |= run_residues(run, m);
    best = std::min(best, Rational(big(needed.count()), big(m)));
  }
  r.value("min cover density of " + name + " over moduli <= " + std::to_string(max_m), best.to_string());
  return best;
}

}  // namespace

Integer factorial_interval_count(bool odd, unsigned first_offset, const Integer& limit) {
  Integer total = 0;
  for (unsigned long j = 1;; ++j) {
    const Integer a = factorial(4 * j + first_offset);
    if (a > limit) break;
    Integer b = factorial(4 * j + first_offset + 1);
    if (b > limit) b = limit;
    total += parity_count(a, b, odd);
  }
  return total;
}

FactorialTable dstar_counterexample(unsigned nmax, std::uint64_t max_cover_modulus) {
  if (nmax == 0 || nmax > 4) throw ContractViolation("nmax must lie in [1, 4]");
  FactorialTable t;
  Report& r = t.report;
  r.title = "factorial intervals: X = E ∩ 2N, Y = F ∩ (2N+1)";

  Rational previous_x(0);
  bool increasing = true;
  for (unsigned n = 1; n <= nmax; ++n) {
    for (unsigned off : {1U, 3U}) {
      FactorialCheckpoint c;
      c.n = n;
      c.at = factorial(4 * n + off);
      c.count_x = factorial_interval_count(false, 0, c.at);
      c.count_y = factorial_interval_count(true, 2, c.at);
      c.ratio_x = Rational(c.count_x, c.at);
      c.ratio_y = Rational(c.count_y, c.at);
      c.ratio_union = Rational(c.count_x + c.count_y, c.at);
      const std::string tag = "(" + std::to_string(4 * n + off) + ")!: ";
      r.value(tag + "|X ∩ [1, N]|", c.count_x.get_str());
      r.value(tag + "|Y ∩ [1, N]|", c.count_y.get_str());
      r.value(tag + "X ratio", c.ratio_x.to_string());
      r.value(tag + "X ratio ~", c.ratio_x.to_decimal());
      r.value(tag + "Y ratio ~", c.ratio_y.to_decimal());
      r.value(tag + "X ∪ Y ratio ~", c.ratio_union.to_decimal());
      if (off == 1) {
        increasing = increasing && previous_x < c.ratio_x && c.ratio_x < Rational(Integer(1), Integer(2));
        previous_x = c.ratio_x;
      }
      t.rows.push_back(std::move(c));
    }
  }
  r.check("X ratios at (4n+1)! increase and stay below 1/2", increasing);

  // Runs that recur with growing length: X has runs of evens, Y runs of odds,
  // and both complements contain runs of consecutive integers.
  std::vector<Run> x_runs, y_runs, gap_x, gap_y, gap_union;
  for (unsigned long j = 1; j <= 2; ++j) {
    x_runs.push_back({factorial(4 * j), factorial(4 * j + 1), 2});
    y_runs.push_back({factorial(4 * j + 2) + 1, factorial(4 * j + 3) - 1, 2});
    gap_x.push_back({factorial(4 * j + 1) + 1, factorial(4 * j + 4) - 1, 1});
    gap_y.push_back({factorial(4 * j + 3) + 1, factorial(4 * j + 6) - 1, 1});
    gap_union.push_back({factorial(4 * j + 1) + 1, factorial(4 * j + 2) - 1, 1});
  }
  std::vector<Run> union_runs = x_runs;
  union_runs.insert(union_runs.end(), y_runs.begin(), y_runs.end());

  const Rational half(Integer(1), Integer(2));
  const Rational x_lower = cover_lower_bound(x_runs, max_cover_modulus, r, "X");
  const Rational y_lower = cover_lower_bound(y_runs, max_cover_modulus, r, "Y");
  const Rational u_lower = cover_lower_bound(union_runs, max_cover_modulus, r, "X ∪ Y");
  const Rational cx_lower = cover_lower_bound(gap_x, max_cover_modulus, r, "complement of X");
  const Rational cy_lower = cover_lower_bound(gap_y, max_cover_modulus, r, "complement of Y");
  const Rational cu_lower = cover_lower_bound(gap_union, max_cover_modulus, r, "complement of X ∪ Y");

  // Upper bounds come from the covers 2N, 2N+1 and N; the lower bounds above
  // meet them.
  const Rational bx = x_lower;
  const Rational by = y_lower;
  const Rational bu = u_lower;
  r.check("b*(X) = 1/2 (cover 2N, every cover needs all even residues)", x_lower == half);
  r.check("b*(Y) = 1/2 (cover 2N+1, every cover needs all odd residues)", y_lower == half);
  r.check("b*(X ∪ Y) = 1", u_lower == Rational(1));
  r.check("b*(X ∪ Y) = b*(X) + b*(Y)", bu == bx + by);
  const Rational lx = Rational(1) - cx_lower;
  const Rational ly = Rational(1) - cy_lower;
  const Rational lu = Rational(1) - cu_lower;
  r.check("b_*(X) = b_*(Y) = b_*(X ∪ Y) = 0", lx == Rational(0) && ly == Rational(0) && lu == Rational(0));
  r.check("b_*(X ∪ Y) = b_*(X) + b_*(Y)", lu == lx + ly);
  r.value("b*(X)", bx.to_string());
  r.value("b*(Y)", by.to_string());
  r.value("b*(X ∪ Y)", bu.to_string());
  r.value("d*(X) = d*(Y) = d*(X ∪ Y)", "1/2 (limit of the ratios above)");
  return t;
}

}  // namespace bucklab
