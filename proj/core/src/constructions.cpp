#include "bucklab/constructions.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <utility>

#include "bucklab/errors.hpp"

namespace bucklab {

using Value = EventuallyPeriodicSet::Value;

namespace {

Rational ratio(std::uint64_t p, std::uint64_t q) {
  return Rational(Integer(static_cast<unsigned long>(p)), Integer(static_cast<unsigned long>(q)));
}

Integer big(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

std::vector<Value> range_values(Value lo, Value hi) {
  std::vector<Value> out;
  for (Value v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

// Block q*N + [0, count-1]; empty for count = 0.
EventuallyPeriodicSet block(Value q, Value count) {
  if (count == 0) return EventuallyPeriodicSet::empty();
  return EventuallyPeriodicSet::residue_classes(q, range_values(0, count - 1));
}

std::string interval_text(const DensityInterval& d) {
  return "[" + d.lo.to_string() + ", " + d.hi.to_string() + "]";
}

Rational tight_width() { return Rational(Integer(1), pow2(96)); }

}  // namespace

std::string describe(const Alpha& alpha) {
  if (const auto* r = std::get_if<Rational>(&alpha)) return r->to_string();
  return std::get<IntervalReal>(alpha).description();
}

// ---- rational case ---------------------------------------------------------

EventuallyPeriodicSet construct_rational(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  if (b == 0 || n == 0) throw ContractViolation("b and n must be positive");
  if (a > b) throw ContractViolation("a = " + std::to_string(a) + " exceeds b = " + std::to_string(b));
  const Value m = checked_mul_u64(n, b);
  EventuallyPeriodicSet tail = a == 0 ? EventuallyPeriodicSet::empty()
                                      : EventuallyPeriodicSet::residue_classes(m, range_values(1, a));
  return unite(EventuallyPeriodicSet::finite({0}), tail);
}

Report check_rational(std::uint64_t a, std::uint64_t b, std::uint64_t n, std::uint64_t k) {
  if (k == 0 || k > n) throw ContractViolation("k must lie in [1, n]");
  Report r;
  r.title = "rational construction a/b = " + std::to_string(a) + "/" + std::to_string(b) +
            ", n = " + std::to_string(n) + ", k = " + std::to_string(k);
  const EventuallyPeriodicSet set = construct_rational(a, b, n);
  const EventuallyPeriodicSet sum = k_fold_sumset(set, k);
  const Value m = n * b;
  const EventuallyPeriodicSet expected =
      unite(EventuallyPeriodicSet::finite({0}),
            a == 0 ? EventuallyPeriodicSet::empty() : EventuallyPeriodicSet::residue_classes(m, range_values(1, k * a)));
  const Rational target = ratio(k * a, m);
  r.value("A", set.to_string());
  r.value("kA", sum.to_string());
  r.value("buck(kA)", buck(sum).to_string());
  r.value("buck(kA) ~", buck(sum).to_decimal());
  r.check("kA = {0} ∪ (nbN + [1, ka])", sum == expected, expected.to_string());
  r.check("buck(kA) = ka/(nb)", buck(sum) == target, target.to_string());
  r.check("buck_lower(kA) = buck_upper(kA)", buck_lower(sum) == buck_upper(sum));
  return r;
}

// ---- irrational case -------------------------------------------------------

namespace detail {

struct IrrationalCache {
  std::mutex mutex;
  std::vector<IrrationalStageSets> sets;     // index i-1 holds stage i
  std::vector<EventuallyPeriodicSet> unions;  // A_i
};

}  // namespace detail

namespace {

// Computes stages up to i (inclusive) into the cache.
void extend_cache(detail::IrrationalCache& cache, const Expansion& e, std::size_t i) {
  const Integer fact_lower = factorial(e.n - 1);
  while (cache.sets.size() < i) {
    const std::size_t j = cache.sets.size() + 1;
    const ExpansionStep& step = e.steps[j - 1];
    const Value q = to_u64(step.q);
    const Integer c_big = fact_lower * step.beta;
    if (c_big < 1 || c_big >= step.q) {
      throw InternalConsistencyError("stage " + std::to_string(j) + ": (n-1)! beta = " + c_big.get_str() +
                                     " outside [1, q - 1]");
    }
    const Value c = to_u64(c_big);
    const EventuallyPeriodicSet prev_y = j == 1 ? EventuallyPeriodicSet::naturals() : cache.sets.back().y;
    IrrationalStageSets s;
    s.x = intersect(prev_y, block(q, c));
    s.y = intersect(prev_y, EventuallyPeriodicSet::progression(q, c));

    std::vector<Congruence> congruences;
    for (std::size_t t = 0; t < j; ++t) {
      congruences.push_back({fact_lower * e.steps[t].beta, e.steps[t].q});
    }
    const Congruence crt = crt_solve(congruences);
    s.r = crt.residue;
    if (s.y != EventuallyPeriodicSet::progression(to_u64(crt.modulus), to_u64(crt.residue))) {
      throw InternalConsistencyError("stage " + std::to_string(j) + ": Y_i differs from its CRT progression");
    }
    const EventuallyPeriodicSet prev_a = j == 1 ? EventuallyPeriodicSet::empty() : cache.unions.back();
    cache.unions.push_back(unite(prev_a, s.x));
    cache.sets.push_back(std::move(s));
  }
}

}  // namespace

IrrationalStageSets IrrationalConstruction::stage_sets(std::size_t i) const {
  if (i == 0 || i > expansion.steps.size()) {
    throw StageBudgetReached("stage " + std::to_string(i) + " unavailable; expansion has " +
                             std::to_string(expansion.steps.size()) + " steps");
  }
  auto& cache = *cache_;
  std::lock_guard lock(cache.mutex);
  extend_cache(cache, expansion, i);
  return cache.sets[i - 1];
}

IrrationalConstruction construct_irrational(const IntervalReal& alpha, std::uint64_t n, std::size_t depth,
                                            const ExpansionOptions& options) {
  Expansion e = expand(alpha, n, depth, options);
  auto cache = std::make_shared<detail::IrrationalCache>();
  const Rational alpha_hi = enclosure_with_width(alpha, tight_width(), options.refinement_budget).hi;
  auto shared_expansion = std::make_shared<const Expansion>(e);

  StagedSet::Producer producer = [cache, shared_expansion, alpha_hi](std::size_t i) {
    std::lock_guard lock(cache->mutex);
    extend_cache(*cache, *shared_expansion, i);
    const EventuallyPeriodicSet& a = cache->unions[i - 1];
    Stage st{a, unite(a, cache->sets[i - 1].y), Rational(0)};
    // Tail of the series from term i on, bounded through alpha's enclosure.
    const Rational tail = alpha_hi - partial_sum(*shared_expansion, i - 1);
    st.error = tail + Rational(Integer(2), pow2(i));
    return st;
  };
  const std::string description = "irrational construction for " + alpha.description() + ", n = " + std::to_string(n);
  IrrationalConstruction out{std::move(e), StagedSet(std::move(producer), shared_expansion->steps.size(), description),
                             cache};
  return out;
}

Report check_irrational(const IrrationalConstruction& c, std::uint64_t k, std::size_t stages) {
  const Expansion& e = c.expansion;
  if (k == 0 || k > e.n) throw ContractViolation("k must lie in [1, n]");
  Report r;
  r.title = c.staged.description() + ", k = " + std::to_string(k);
  const std::size_t available = std::min(stages, e.steps.size());
  if (available < stages) {
    r.value("stages", std::to_string(available) + " of " + std::to_string(stages) + " (" + e.stop_reason + ")");
  }
  const Rational kn = ratio(k, e.n);
  const Enclosure alpha = enclosure_with_width(e.alpha, tight_width());
  const Rational target_lo = kn * alpha.lo;
  const Rational target_hi = kn * alpha.hi;

  EventuallyPeriodicSet previous_y = EventuallyPeriodicSet::naturals();
  EventuallyPeriodicSet previous_a = EventuallyPeriodicSet::empty();
  for (std::size_t i = 1; i <= available; ++i) {
    const std::string tag = "stage " + std::to_string(i) + ": ";
    const IrrationalStageSets sets = c.stage_sets(i);
    const Stage& st = c.staged.stage(i);
    const DensityInterval d = c.staged.interval(i, k);  // nesting is enforced here
    const Integer& product = e.steps[i - 1].modulus_product;
    const Rational s_prev = partial_sum(e, i - 1);

    r.value(tag + "interval", interval_text(d));
    r.value(tag + "width ~", d.width().to_decimal());
    r.check(tag + "X_i, Y_i non-empty", !sets.x.is_empty() && !sets.y.is_empty());
    r.check(tag + "X_i ∪ Y_i ⊆ Y_{i-1}", is_subset(unite(sets.x, sets.y), previous_y));
    r.check(tag + "X_i disjoint from A_{i-1}", intersect(sets.x, previous_a).is_empty());
    r.check(tag + "Y_i = q_1...q_i N + r_i", sets.y.modulus() == to_u64(product) &&
                                               sets.y.residues().size() == 1 &&
                                               sets.y.residues().front() == to_u64(sets.r));

    const Rational y_density = buck(k_fold_sumset(sets.y, k));
    const Rational inv_product(Integer(1), product);
    r.check(tag + "b(kY_i) = 1/(q_1...q_i) <= 2^-i", y_density == inv_product && inv_product <= Rational(Integer(1), pow2(i)),
            y_density.to_string());

    const Rational x_density = buck(k_fold_sumset(sets.x, k));
    r.check(tag + "b(kA_i) = (k/n) S_{i-1} + b(kX_i)", d.lo == kn * s_prev + x_density,
            d.lo.to_string() + " vs " + (kn * s_prev + x_density).to_string());

    r.check(tag + "interval contains k alpha / n", d.lo <= target_lo && target_hi <= d.hi,
            "k alpha / n in [" + target_lo.to_decimal() + ", " + target_hi.to_decimal() + "]");
    const Rational bound = (alpha.lo - s_prev) + Rational(Integer(2), pow2(i));
    r.check(tag + "width <= sum_{j>=i} n! beta_j / (q_1...q_j) + 2^(1-i)", d.width() <= bound,
            d.width().to_decimal() + " <= " + bound.to_decimal());
    r.check(tag + "b(B_i) - b(A_i) <= certified error", buck(st.outer) - buck(st.inner) <= st.error);

    previous_y = sets.y;
    previous_a = st.inner;
  }
  return r;
}

// ---- block plus sparse subset ----------------------------------------------

SumsetBoundInstance SumsetBoundInstance::make(std::uint64_t n, std::uint64_t t, std::uint64_t q,
                                              EventuallyPeriodicSet v) {
  if (n == 0 || t == 0 || q == 0) throw ContractViolation("n, t, q must be positive");
  if (checked_mul_u64(n, t) >= q) {
    throw ContractViolation("need n t < q, got n t = " + std::to_string(n * t) + ", q = " + std::to_string(q));
  }
  if (v.is_empty()) throw ContractViolation("V must be non-empty");
  if (!is_subset(v, EventuallyPeriodicSet::progression(q, t))) {
    throw ContractViolation("V = " + v.to_string() + " is not inside " + std::to_string(q) + "N + " + std::to_string(t));
  }
  SumsetBoundInstance inst;
  inst.n = n;
  inst.t = t;
  inst.q = q;
  inst.s = unite(block(q, t), v);
  inst.v = std::move(v);
  return inst;
}

Report verify_sumset_bound(const SumsetBoundInstance& inst, std::uint64_t k) {
  if (k == 0 || k > inst.n) throw ContractViolation("k must lie in [1, n]");
  Report r;
  r.title = "block plus sparse subset, q = " + std::to_string(inst.q) + ", t = " + std::to_string(inst.t) +
            ", n = " + std::to_string(inst.n) + ", k = " + std::to_string(k);
  const EventuallyPeriodicSet x = block(inst.q, inst.t);
  const EventuallyPeriodicSet ks = k_fold_sumset(inst.s, k);
  const EventuallyPeriodicSet kv = k_fold_sumset(inst.v, k);

  // Z = union over i = 1..k of iX + (k-i)V.
  EventuallyPeriodicSet z = EventuallyPeriodicSet::empty();
  for (std::uint64_t i = 1; i <= k; ++i) {
    EventuallyPeriodicSet part = k_fold_sumset(x, i);
    if (i < k) part = sumset(part, k_fold_sumset(inst.v, k - i));
    z = unite(z, part);
  }
  const EventuallyPeriodicSet w = block(inst.q, k * inst.t);

  const Rational lower = buck_lower(ks);
  const Rational upper = buck_upper(ks);
  const Rational kv_density = buck_upper(kv);
  const Rational base = ratio(k * inst.t, inst.q);
  const Rational top = ratio(k * inst.t + 1, inst.q);
  r.value("S", inst.s.to_string());
  r.value("kS", ks.to_string());
  r.value("b_*(kS)", lower.to_string());
  r.value("b*(kS)", upper.to_string());
  r.value("b*(kV)", kv_density.to_string());
  r.check("kS = kV ∪ Z", ks == unite(kv, z));
  r.check("Z ⊆ qN + [0, kt-1]", is_subset(z, w));
  r.check("kV ⊆ qN + kt", is_subset(kv, EventuallyPeriodicSet::progression(inst.q, k * inst.t)));
  r.check("Z ∩ kV = ∅", intersect(z, kv).is_empty());
  r.check("kt/q <= b_*(kS)", base <= lower, base.to_string() + " <= " + lower.to_string());
  r.check("b_*(kS) <= b*(kS)", lower <= upper);
  r.check("b*(kS) = kt/q + b*(kV)", upper == base + kv_density);
  r.check("b*(kS) <= (kt+1)/q", upper <= top, upper.to_string() + " <= " + top.to_string());
  return r;
}

// ---- translates ------------------------------------------------------------

namespace {

struct TranslatePieces {
  EventuallyPeriodicSet a;
  EventuallyPeriodicSet a_plus_b;
  EventuallyPeriodicSet expected;
};

TranslatePieces translate_pieces(const EventuallyPeriodicSet& c, Value k, Value h, Value y,
                                 const EventuallyPeriodicSet& b) {
  TranslatePieces p;
  p.a = unite(block(k, h - y), affine(c, k, h - y));
  p.a_plus_b = sumset(p.a, b);
  p.expected = unite(block(k, h), affine(c, k, h));
  return p;
}

}  // namespace

TranslateInstance construct_translate(const Alpha& alpha, std::vector<std::uint64_t> b, std::size_t depth,
                                      const ExpansionOptions& options) {
  if (b.empty()) throw ContractViolation("B must be non-empty");
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  const std::vector<std::uint64_t> original = b;

  TranslateInstance inst{alpha, {}, b.front(), 0, 0, 0, {}, {}, {}, std::nullopt, std::nullopt, 0, {}};
  for (auto v : b) inst.b.push_back(v - inst.shift);
  inst.y = inst.b.back();
  const Value y = inst.y;
  const EventuallyPeriodicSet b_set = EventuallyPeriodicSet::finite(inst.b);
  const EventuallyPeriodicSet original_set = EventuallyPeriodicSet::finite(original);
  Report& r = inst.report;
  r.title = "translate construction, alpha = " + describe(alpha);
  r.value("B", original_set.to_string());
  r.value("y", std::to_string(y));

  if (const auto* q = std::get_if<Rational>(&alpha)) {
    if (*q < Rational(0) || *q > Rational(1)) throw ContractViolation("alpha must lie in [0, 1]");
    if (*q == Rational(0) || *q == Rational(1)) {
      inst.a = *q == Rational(0) ? EventuallyPeriodicSet::empty() : EventuallyPeriodicSet::naturals();
      inst.a_plus_b = sumset(inst.a, original_set);
      r.value("A", inst.a.to_string());
      r.value("A + B", inst.a_plus_b.to_string());
      r.check("b(A + B) = alpha", buck(inst.a_plus_b) == *q);
      return inst;
    }
    Value k = 1;
    for (;; ++k) {
      const Rational ka = *q * Rational(big(k));
      if (!ka.is_integer() && ka.floor() >= 2 * y + 1) break;
    }
    const Integer h_big = (*q * Rational(big(k))).floor();
    inst.k = k;
    inst.h = to_u64(h_big);
    const Rational frac = *q * Rational(big(k)) - Rational(h_big);
    inst.c = construct_rational(to_u64(frac.numerator()), to_u64(frac.denominator()), 1);
    const TranslatePieces p = translate_pieces(inst.c, inst.k, inst.h, y, b_set);
    inst.a = p.a;
    inst.a_plus_b = sumset(inst.a, original_set);
    r.value("k", std::to_string(inst.k));
    r.value("h", std::to_string(inst.h));
    r.value("C", inst.c.to_string());
    r.value("A", inst.a.to_string());
    r.value("A + B", inst.a_plus_b.to_string());
    r.value("b(A + B)", buck(inst.a_plus_b).to_string());
    r.check("h/k < alpha < (h+1)/k", ratio(inst.h, inst.k) < *q && *q < ratio(inst.h + 1, inst.k));
    r.check("h >= 2y + 1", inst.h >= 2 * y + 1);
    r.check("b(C) = k alpha - h", buck(inst.c) == frac);
    r.check("A + B = (kN + [0, h-1]) ∪ (kC + h)", p.a_plus_b == p.expected, p.expected.to_string());
    r.check("b(A + B) = alpha", buck(inst.a_plus_b) == *q && buck_lower(inst.a_plus_b) == *q);
    return inst;
  }

  const IntervalReal& x = std::get<IntervalReal>(alpha);
  certify_open_unit(x, options.refinement_budget);
  Value k = 1;
  Integer h_big;
  for (;; ++k) {
    h_big = exact_floor_scaled(x, big(k), options.refinement_budget);
    if (h_big >= 2 * y + 1) break;
  }
  inst.k = k;
  inst.h = to_u64(h_big);
  const Value h = inst.h;
  IrrationalConstruction c = construct_irrational(x.affine(Rational(big(k)), Rational(-h_big)), 1, depth, options);
  const StagedSet c_staged = c.staged;
  StagedSet::Producer producer = [c_staged, k, h, y, b_set](std::size_t i) {
    const Stage& cs = c_staged.stage(i);
    const TranslatePieces in = translate_pieces(cs.inner, k, h, y, b_set);
    const TranslatePieces out = translate_pieces(cs.outer, k, h, y, b_set);
    if (in.a_plus_b != in.expected || out.a_plus_b != out.expected) {
      throw InternalConsistencyError("stage " + std::to_string(i) + ": A + B decomposition fails");
    }
    return Stage{in.a_plus_b, out.a_plus_b, cs.error / Rational(big(k))};
  };
  inst.sum_staged.emplace(std::move(producer), c_staged.stage_count(), "A + B for " + x.description());
  inst.reported_stage = std::min(depth, c_staged.stage_count());
  r.value("k", std::to_string(k));
  r.value("h", std::to_string(h));
  r.check("h >= 2y + 1", h >= 2 * y + 1);
  if (c.expansion.budget_reached) r.value("stop", c.expansion.stop_reason);

  const Enclosure enc = enclosure_with_width(x, tight_width(), options.refinement_budget);
  r.check("h/k < alpha < (h+1)/k", ratio(h, k) < enc.lo && enc.hi < ratio(h + 1, k));
  for (std::size_t i = 1; i <= inst.reported_stage; ++i) {
    const std::string tag = "stage " + std::to_string(i) + ": ";
    const DensityInterval d = inst.sum_staged->interval(i, 1);
    r.value(tag + "b(A + B) in", interval_text(d));
    r.value(tag + "width ~", d.width().to_decimal());
    r.check(tag + "interval contains alpha", d.lo <= enc.lo && enc.hi <= d.hi);
    const DensityInterval dc = c.staged.interval(i, 1);
    r.check(tag + "interval = (h + b(C_i)) / k", d.lo == (Rational(big(h)) + dc.lo) / Rational(big(k)) &&
                                                     d.hi == (Rational(big(h)) + dc.hi) / Rational(big(k)));
  }
  if (inst.reported_stage > 0) {
    const std::size_t i = inst.reported_stage;
    const Stage& cs = c.staged.stage(i);
    inst.c = cs.inner;
    const TranslatePieces p = translate_pieces(cs.inner, k, h, y, b_set);
    inst.a = p.a;
    inst.a_plus_b = sumset(inst.a, original_set);
    r.check("A + B = (kN + [0, h-1]) ∪ (kC + h) at stage " + std::to_string(i), p.a_plus_b == p.expected);
  }
  inst.c_staged.emplace(std::move(c));
  return inst;
}

// ---- basis -----------------------------------------------------------------

Bitmap two_squares_sieve(std::uint64_t limit) {
  if (limit >= kMaxDenseSpan) throw CapacityExceeded("sieve limit too large");
  Bitmap out(limit + 1);
  for (std::uint64_t x = 0; x * x <= limit; ++x) {
    for (std::uint64_t y = x; x * x + y * y <= limit; ++y) out.set(x * x + y * y);
  }
  return out;
}

Report construct_basis(const Alpha& alpha, const BasisOptions& options) {
  Report r;
  r.title = "basis construction, alpha = " + describe(alpha);
  const std::uint64_t limit = std::max<std::uint64_t>(options.sieve_limit, 100);

  EventuallyPeriodicSet y_inner;
  DensityInterval y_density;
  if (const auto* q = std::get_if<Rational>(&alpha)) {
    if (*q < Rational(0) || *q > Rational(1)) throw ContractViolation("alpha must lie in [0, 1]");
    y_inner = construct_rational(to_u64(q->numerator()), to_u64(q->denominator()), 1);
    y_density = {buck(y_inner), buck(y_inner)};
    r.check("b(Y) = alpha", y_density.lo == *q);
  } else {
    const IntervalReal& x = std::get<IntervalReal>(alpha);
    IrrationalConstruction c = construct_irrational(x, 1, options.depth);
    const std::size_t i = c.staged.stage_count();
    if (i == 0) throw StageBudgetReached("no stage available for " + x.description());
    y_inner = c.staged.stage(i).inner;
    y_density = c.staged.interval(i, 1);
    const Enclosure enc = enclosure_with_width(x, tight_width());
    r.value("stage", std::to_string(i));
    r.check("b(Y) bracket contains alpha", y_density.lo <= enc.lo && enc.hi <= y_density.hi);
  }
  r.value("Y", y_inner.to_string());
  r.value("b(Y) in", interval_text(y_density));

  const Bitmap squares = two_squares_sieve(limit);
  Bitmap a = membership_bitmap(y_inner, limit + 1);
  a |= squares;

  r.check("0 ∈ A", a.test(0));
  std::uint64_t g = 0;
  a.for_each_set([&](std::size_t v) {
    if (v <= 100) g = std::gcd(g, static_cast<std::uint64_t>(v));
  });
  r.value("gcd(A ∩ [0, 100])", std::to_string(g));
  r.check("gcd(A ∩ [0, 100]) = 1", g == 1);

  Bitmap two_q(limit + 1);
  squares.for_each_set([&](std::size_t v) { two_q.or_shifted(squares, v); });
  r.check("2Q ⊇ [0, " + std::to_string(limit) + "]", two_q.count() == limit + 1);
  Bitmap two_a(limit + 1);
  a.for_each_set([&](std::size_t v) { two_a.or_shifted(a, v); });
  r.check("2A ⊇ [0, " + std::to_string(limit) + "]", two_a.count() == limit + 1);

  const ResidueProfile profile = sums_of_two_squares_residues();
  Rational previous(1);
  std::uint64_t previous_m = 1;
  Rational best(1);
  for (std::uint64_t m : options.cover_moduli) {
    const Rational bound = modulus_cover_bound(profile, m);
    r.value("cover bound(" + std::to_string(m) + ") for b*(Q)", bound.to_string());
    if (m % previous_m == 0) {
      r.check("bound(" + std::to_string(m) + ") <= bound(" + std::to_string(previous_m) + ")", bound <= previous);
    }
    previous = bound;
    previous_m = m;
    best = std::min(best, bound);
  }
  // Monotonicity from below, subadditivity from above.
  r.value("lower bound for b_*(A)", y_density.lo.to_string());
  r.value("upper bound for b*(A)", std::min(Rational(1), y_density.hi + best).to_string());
  r.value("note", "b(Q) = 0 is an imported fact; the cover bounds above are its finite evidence");
  return r;
}

// ---- non-domain doubling ---------------------------------------------------

std::array<std::uint64_t, 4> four_squares(std::uint64_t h) {
  for (std::uint64_t a = 0; a * a <= h; ++a) {
    const std::uint64_t ra = h - a * a;
    for (std::uint64_t b = 0; b * b <= ra; ++b) {
      const std::uint64_t rb = ra - b * b;
      for (std::uint64_t c = 0; c * c <= rb; ++c) {
        const std::uint64_t rc = rb - c * c;
        const std::uint64_t d = to_u64(isqrt(big(rc)));
        if (d * d == rc) return {a, b, c, d};
      }
    }
  }
  throw InternalConsistencyError("no four-square representation of " + std::to_string(h));
}

Report counterexample_witness(std::uint64_t k, std::uint64_t h) {
  if (k == 0) throw ContractViolation("k must be positive");
  if (h >= k) throw ContractViolation("h must lie in [0, k-1]");
  if (k > (std::uint64_t{1} << 31)) throw CapacityExceeded("modulus too large for the witness check");
  Report r;
  r.title = "witness for " + std::to_string(k) + "N + " + std::to_string(h);
  const auto y = four_squares(h);
  std::uint64_t full = 0, reduced = 0, squares = 0, ys = 0;
  bool large = true;
  std::string ns;
  for (std::uint64_t yi : y) {
    const std::uint64_t n = checked_add_u64(checked_mul_u64(h + 1, k), yi);
    large = large && n >= k && n >= h;
    std::uint64_t f = 1 % k;
    for (std::uint64_t j = 2; j <= n && f != 0; ++j) f = f * (j % k) % k;
    const std::uint64_t nm = n % k;
    const std::uint64_t x = (f + nm) % k;
    full = (full + x * x) % k;
    reduced = (reduced + f * ((f + 2 * nm) % k) % k + nm * nm) % k;
    squares = (squares + nm * nm) % k;
    ys = (ys + (yi % k) * (yi % k)) % k;
    ns += (ns.empty() ? "" : ",") + std::to_string(n);
  }
  r.value("y", std::to_string(y[0]) + "," + std::to_string(y[1]) + "," + std::to_string(y[2]) + "," +
                   std::to_string(y[3]));
  r.value("n", ns);
  r.check("sum y_i^2 = h", y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3] == h);
  r.check("n_i >= k and n_i >= h", large);
  r.check("sum x_i^2 ≡ sum n_i!(n_i! + 2n_i) + n_i^2 (mod k)", full == reduced);
  r.check("≡ sum n_i^2 (mod k)", reduced == squares);
  r.check("≡ sum y_i^2 (mod k)", squares == ys);
  r.check("≡ h (mod k)", full == h % k);
  return r;
}

SparsityBound counterexample_sparsity(std::uint64_t m) {
  if (m == 0) throw ContractViolation("m must be positive");
  SparsityBound s;
  s.m = m;
  const std::uint64_t root = to_u64(isqrt(big(m)));
  std::uint64_t f = 1;  // n!
  std::uint64_t last_n = 0;
  for (std::uint64_t n = 0;; ++n) {
    if (n > 0) {
      if (__builtin_mul_overflow(f, n, &f)) break;
    }
    if (f <= root) last_n = n;
    if (f > root) break;
    if (f + n <= root) ++s.count;
  }
  s.bound = big(s.count) * big(s.count) * big(s.count) * big(s.count);
  s.ratio = Rational(s.bound, big(m));
  s.factorial_sup = big(last_n) * big(last_n) * big(last_n) * big(last_n);
  return s;
}

Report counterexample_report(std::uint64_t kmax, std::uint64_t m) {
  Report r;
  r.title = "V = {n! + n}, A = {x^2 + y^2 : x, y in V}: 2A outside the Buck domain";
  std::uint64_t failures = 0, total = 0;
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    for (std::uint64_t h = 0; h < k; ++h) {
      ++total;
      const Report w = counterexample_witness(k, h);
      if (!w.passed()) {
        ++failures;
        r.check("witness " + std::to_string(k) + "N + " + std::to_string(h), false);
      }
    }
  }
  r.value("residue classes checked", std::to_string(total));
  r.check("every class k N + h with k <= " + std::to_string(kmax) + " meets 2A", failures == 0);
  r.value("b*(2A)", "1/1");

  const SparsityBound s = counterexample_sparsity(m);
  r.value("m", std::to_string(m));
  r.value("|V ∩ [1, sqrt m]|", std::to_string(s.count));
  r.value("bound on |2A ∩ [1, m]|", s.bound.get_str());
  r.value("sup{n^4 : n! <= sqrt m}", s.factorial_sup.get_str());
  r.value("ratio bound", s.ratio.to_string());
  r.value("ratio bound ~", s.ratio.to_decimal(15));
  r.check("ratio bound <= 10^-7", s.ratio <= Rational(Integer(1), Integer(10000000)));
  // A progression kN + h with k <= m / (bound + 2) has more than `bound`
  // members in [1, m], so it cannot sit inside 2A.
  const Integer steps = big(m) / (s.bound + 2);
  r.value("largest step excluded for progressions inside 2A", steps.get_str());
  r.check("counting bound excludes progressions", steps >= 1);

  Rational previous(1);
  bool decreasing = true;
  for (std::uint64_t mm : {std::uint64_t{1000000}, std::uint64_t{1000000000}, std::uint64_t{1000000000000}}) {
    const SparsityBound t = counterexample_sparsity(mm);
    r.value("ratio bound at " + std::to_string(mm), t.ratio.to_string());
    decreasing = decreasing && t.ratio <= previous;
    previous = t.ratio;
  }
  r.check("ratio bound non-increasing over 10^6, 10^9, 10^12", decreasing);
  r.value("b_*(2A)", "0/1");
  return r;
}

}  // namespace bucklab
