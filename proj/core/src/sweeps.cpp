#include "bucklab/sweeps.hpp"

#include <algorithm>

#include "bucklab/buck.hpp"
#include "bucklab/constructions.hpp"
#include "bucklab/errors.hpp"
#include "bucklab/expansion.hpp"

namespace bucklab {

using Value = EventuallyPeriodicSet::Value;

namespace {

Value uniform(std::mt19937_64& rng, Value lo, Value hi) {
  return std::uniform_int_distribution<Value>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, unsigned percent = 50) { return uniform(rng, 1, 100) <= percent; }

// Records a failing sub-report under its title; passing ones only count.
void absorb(Report& into, const Report& sub, std::size_t& failures) {
  if (!sub.passed()) {
    ++failures;
    if (failures <= 5) into.append(sub, sub.title + ": ");
  }
}

void summarize(Report& r, std::size_t total, std::size_t failures, const std::string& what) {
  r.value("instances", std::to_string(total));
  r.value("failing instances", std::to_string(failures));
  r.check(what, failures == 0);
}

Rational ratio(std::uint64_t p, std::uint64_t q) {
  return Rational(Integer(static_cast<unsigned long>(p)), Integer(static_cast<unsigned long>(q)));
}

}  // namespace

EventuallyPeriodicSet random_set(std::mt19937_64& rng, std::uint64_t max_modulus, std::uint64_t max_threshold) {
  const Value q = uniform(rng, 1, std::max<std::uint64_t>(max_modulus, 1));
  const Value t = uniform(rng, 0, max_threshold / q) * q;
  std::vector<Value> residues, exceptions;
  const unsigned density = static_cast<unsigned>(uniform(rng, 0, 100));
  for (Value r = 0; r < q; ++r) {
    if (coin(rng, density)) residues.push_back(r);
  }
  for (Value e = 0; e < t; ++e) {
    if (coin(rng, density)) exceptions.push_back(e);
  }
  return EventuallyPeriodicSet::make(q, std::move(residues), t, std::move(exceptions));
}

std::vector<std::pair<std::string, IntervalReal>> standard_irrationals() {
  return {
      {"sqrt(2)/2", IntervalReal::sqrt_of(Rational(Integer(1), Integer(2)))},
      {"golden-conjugate", IntervalReal::golden_conjugate()},
      {"sqrt(3)-1", IntervalReal::sqrt_of(Rational(3)).affine(Rational(1), Rational(-1))},
  };
}

Report sweep_rational_grid(std::uint64_t bmax, std::uint64_t nmax) {
  Report r;
  r.title = "rational construction grid, b <= " + std::to_string(bmax) + ", n <= " + std::to_string(nmax);
  std::size_t total = 0, failures = 0;
  for (std::uint64_t b = 1; b <= bmax; ++b) {
    for (std::uint64_t a = 0; a <= b; ++a) {
      for (std::uint64_t n = 1; n <= nmax; ++n) {
        for (std::uint64_t k = 1; k <= n; ++k) {
          ++total;
          absorb(r, check_rational(a, b, n, k), failures);
        }
      }
    }
  }
  summarize(r, total, failures, "buck(kA) = ka/(nb) on the whole grid");
  return r;
}

Report sweep_progression_density(std::size_t count, std::uint64_t seed, std::uint64_t max_modulus) {
  Report r;
  r.title = "progression-union densities, seed " + std::to_string(seed);
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < count; ++i) {
    Report sub;
    const Value m = uniform(rng, 1, max_modulus);
    std::vector<Value> h;
    for (Value x = 0; x < m; ++x) {
      if (coin(rng)) h.push_back(x);
    }
    const EventuallyPeriodicSet s = EventuallyPeriodicSet::residue_classes(m, h);
    sub.title = "mN + H with m = " + std::to_string(m) + ", " + s.to_string();
    const Rational expected = ratio(h.size(), m);
    sub.check("buck(mN + H) = |H|/m", buck_upper(s) == expected && buck_lower(s) == expected,
              buck_upper(s).to_string() + " vs " + expected.to_string());

    std::vector<Value> members;
    const Value fcount = uniform(rng, 0, 6);
    for (Value j = 0; j < fcount; ++j) members.push_back(uniform(rng, 0, 200));
    const EventuallyPeriodicSet f = EventuallyPeriodicSet::finite(members);
    sub.check("finite sets have density 0", buck_upper(f) == Rational(0) && buck_lower(f) == Rational(0));

    const EventuallyPeriodicSet plus = unite(s, f);
    const EventuallyPeriodicSet minus = difference(s, f);
    sub.check("finite perturbations keep the density", buck(plus) == expected && buck(minus) == expected &&
                                                          buck_lower(plus) == expected &&
                                                          buck_lower(minus) == expected);
    sub.check("conjugacy", buck_lower(s) == Rational(1) - buck_upper(complement(s)));
    absorb(r, sub, failures);
  }
  summarize(r, count, failures, "|H|/m exact, finite sets 0, perturbations invisible");
  return r;
}

Report sweep_additivity(std::size_t count, std::uint64_t seed, std::uint64_t max_modulus) {
  Report r;
  r.title = "disjoint-cover additivity, seed " + std::to_string(seed);
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const Value m = uniform(rng, 2, max_modulus);
    std::vector<Value> ra, rb;
    for (Value x = 0; x < m; ++x) {
      const Value side = uniform(rng, 0, 2);
      if (side == 0) ra.push_back(x);
      if (side == 1) rb.push_back(x);
    }
    const EventuallyPeriodicSet a = EventuallyPeriodicSet::residue_classes(m, ra);
    const EventuallyPeriodicSet b = EventuallyPeriodicSet::residue_classes(m, rb);
    const EventuallyPeriodicSet x = intersect(random_set(rng, max_modulus, 60), a);
    const EventuallyPeriodicSet y = intersect(random_set(rng, max_modulus, 60), b);
    AdditivityResult res = additivity_disjoint(x, y, a, b);
    res.report.title = "X = " + x.to_string() + ", Y = " + y.to_string();
    absorb(r, res.report, failures);
  }
  summarize(r, count, failures, "upper and lower Buck densities split over disjoint covers");
  return r;
}

Report sweep_sumset_bound(std::size_t count, std::uint64_t seed, std::uint64_t max_q) {
  Report r;
  r.title = "block plus sparse subset, seed " + std::to_string(seed);
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const Value q = uniform(rng, 2, max_q);
    const Value t = uniform(rng, 1, q - 1);
    const Value n = uniform(rng, 1, std::min<Value>((q - 1) / t, 6));
    EventuallyPeriodicSet v;
    if (coin(rng, 30)) {
      std::vector<Value> members;
      const Value c = uniform(rng, 1, 3);
      for (Value j = 0; j < c; ++j) members.push_back(t + q * uniform(rng, 0, 5));
      v = EventuallyPeriodicSet::finite(members);
    } else {
      const Value j = uniform(rng, 1, 3);
      std::vector<Value> residues;
      for (Value s = 0; s < j; ++s) {
        if (coin(rng)) residues.push_back(t + q * s);
      }
      if (residues.empty()) residues.push_back(t + q * uniform(rng, 0, j - 1));
      v = EventuallyPeriodicSet::residue_classes(q * j, residues);
      if (coin(rng, 30)) v = difference(v, EventuallyPeriodicSet::finite({t, t + q}));
      if (v.is_empty()) v = EventuallyPeriodicSet::finite({t});
    }
    const SumsetBoundInstance inst = SumsetBoundInstance::make(n, t, q, v);
    Report sub;
    sub.title = "q = " + std::to_string(q) + ", t = " + std::to_string(t) + ", n = " + std::to_string(n) +
                ", V = " + v.to_string();
    for (Value k = 1; k <= n; ++k) sub.append(verify_sumset_bound(inst, k), "k = " + std::to_string(k) + ": ");
    absorb(r, sub, failures);
  }
  summarize(r, count, failures, "kt/q <= b_*(kS) <= b*(kS) = kt/q + b*(kV) <= (kt+1)/q");
  return r;
}

Report sweep_expansions(const std::vector<std::uint64_t>& ns, std::size_t depth) {
  Report r;
  r.title = "expansion invariants, depth " + std::to_string(depth);
  for (const auto& [name, alpha] : standard_irrationals()) {
    for (std::uint64_t n : ns) {
      const std::string tag = name + ", n = " + std::to_string(n);
      const Expansion e = expand(alpha, n, depth);
      const Report sub = check_expansion(e);
      r.value(tag + ": steps", std::to_string(e.steps.size()) + (e.budget_reached ? " (" + e.stop_reason + ")" : ""));
      r.check(tag + ": all step invariants", sub.passed());
      if (!sub.passed()) r.append(sub, tag + ": ");
    }
  }
  return r;
}

Report sweep_irrational(std::uint64_t n, std::size_t stages, const std::vector<std::uint64_t>& ks) {
  Report r;
  r.title = "irrational sandwiches, n = " + std::to_string(n) + ", stages <= " + std::to_string(stages);
  for (const auto& [name, alpha] : standard_irrationals()) {
    const IrrationalConstruction c = construct_irrational(alpha, n, stages);
    for (std::uint64_t k : ks) {
      const std::string tag = name + ", k = " + std::to_string(k);
      const Report sub = check_irrational(c, k, stages);
      r.value(tag + ": stages", std::to_string(std::min(stages, c.expansion.steps.size())));
      if (auto* w = sub.find_value("stage " + std::to_string(std::min(stages, c.expansion.steps.size())) + ": width ~")) {
        r.value(tag + ": final width ~", *w);
      }
      r.check(tag + ": nested, contains k alpha / n, width within bound", sub.passed());
      if (!sub.passed()) r.append(sub, tag + ": ");
    }
  }
  return r;
}

}  // namespace bucklab
