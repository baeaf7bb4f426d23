#include "bucklab/periodic_set.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "bucklab/arith.hpp"
#include "bucklab/errors.hpp"
#include "convolution.hpp"
#include "bucklab/set_text.hpp"

namespace bucklab {

using Value = EventuallyPeriodicSet::Value;

namespace {

void check_span(std::uint64_t span, const char* what) {
  if (span > kMaxDenseSpan) {
    throw CapacityExceeded(std::string(what) + " needs " + std::to_string(span) +
                           " positions; limit is " + std::to_string(kMaxDenseSpan));
  }
}

std::vector<Value> prime_factors(Value n) {
  std::vector<Value> out;
  for (Value f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool has_period(const Bitmap& tail, Value d) {
  const Value q = tail.size();
  for (Value i = d; i < q; ++i) {
    if (tail.test(i) != tail.test(i - d)) return false;
  }
  return true;
}

Bitmap residue_bitmap(const EventuallyPeriodicSet& s) {
  Bitmap b(s.modulus());
  for (Value r : s.residues()) b.set(r);
  return b;
}

}  // namespace

// Builds canonical values from two intermediate shapes:
//  - dense: explicit prefix bits on [0, T) plus tail bits mod q;
//  - generators: finite bits F plus generator bits G, meaning F ∪ (G + L*N).
struct SetBuilder {
  static EventuallyPeriodicSet from_dense(Bitmap prefix, const Bitmap& tail) {
    EventuallyPeriodicSet out;
    const Value q = tail.size();
    if (tail.none()) {
      // Finite set.
      out.modulus_ = 1;
      prefix.for_each_set([&](std::size_t i) { out.exceptions_.push_back(i); });
      out.threshold_ = out.exceptions_.empty() ? 0 : out.exceptions_.back() + 1;
      return out;
    }

    Value period = q;
    for (Value f : prime_factors(q)) {
      while (period % f == 0 && has_period(tail, period / f)) period /= f;
    }

    Bitmap pattern(period);
    for (Value r = 0; r < period; ++r) pattern.assign(r, tail.test(r));

    // Extend the prefix to a multiple of the period, then peel whole periods
    // off the end while they already match the tail.
    Value threshold = prefix.size();
    Value rounded = (threshold + period - 1) / period * period;
    check_span(rounded, "canonicalization");
    Bitmap full(rounded);
    prefix.for_each_set([&](std::size_t i) { full.set(i); });
    for (Value n = threshold; n < rounded; ++n) full.assign(n, pattern.test(n % period));
    threshold = rounded;
    while (threshold >= period) {
      bool matches = true;
      for (Value n = threshold - period; n < threshold; ++n) {
        if (full.test(n) != pattern.test(n % period)) {
          matches = false;
          break;
        }
      }
      if (!matches) break;
      threshold -= period;
    }

    out.modulus_ = period;
    out.threshold_ = threshold;
    pattern.for_each_set([&](std::size_t r) { out.residues_.push_back(r); });
    full.for_each_set([&](std::size_t n) {
      if (n < threshold) out.exceptions_.push_back(n);
    });
    return out;
  }

  static EventuallyPeriodicSet from_generators(Value period, const Bitmap& finite, const Bitmap& generators) {
    const Value top = std::max(finite.size(), generators.size());
    if (generators.none()) {
      Bitmap prefix(top);
      prefix |= finite;
      return from_dense(std::move(prefix), Bitmap(1));
    }
    check_span(checked_add_u64(top, period), "generator expansion");
    Bitmap seen(period);
    Bitmap prefix(top);
    for (Value n = 0; n < top; ++n) {
      const Value r = n % period;
      if (n < generators.size() && generators.test(n)) seen.set(r);
      if (seen.test(r) || (n < finite.size() && finite.test(n))) prefix.set(n);
    }
    return from_dense(std::move(prefix), seen);
  }
};

EventuallyPeriodicSet EventuallyPeriodicSet::make(Value modulus, std::vector<Value> residues, Value threshold,
                                                  std::vector<Value> exceptions) {
  if (modulus == 0) throw ContractViolation("modulus must be positive");
  if (threshold % modulus != 0) {
    throw ContractViolation("threshold " + std::to_string(threshold) + " is not a multiple of modulus " +
                            std::to_string(modulus));
  }
  check_span(checked_add_u64(threshold, modulus), "make");
  Bitmap tail(modulus);
  for (Value r : residues) {
    if (r >= modulus) {
      throw ContractViolation("residue " + std::to_string(r) + " out of range [0, " +
                              std::to_string(modulus - 1) + "]");
    }
    tail.set(r);
  }
  Bitmap prefix(threshold);
  for (Value e : exceptions) {
    if (e >= threshold) {
      throw ContractViolation("exceptional member " + std::to_string(e) + " not below threshold " +
                              std::to_string(threshold));
    }
    prefix.set(e);
  }
  return SetBuilder::from_dense(std::move(prefix), tail);
}

EventuallyPeriodicSet EventuallyPeriodicSet::naturals() { return make(1, {0}, 0, {}); }

EventuallyPeriodicSet EventuallyPeriodicSet::finite(std::vector<Value> members) {
  Value top = 0;
  for (Value m : members) top = std::max(top, m + 1);
  check_span(top, "finite set");
  Bitmap prefix(top);
  for (Value m : members) prefix.set(m);
  return SetBuilder::from_dense(std::move(prefix), Bitmap(1));
}

EventuallyPeriodicSet EventuallyPeriodicSet::residue_classes(Value modulus, const std::vector<Value>& residues) {
  if (modulus == 0) throw ContractViolation("modulus must be positive");
  std::vector<Value> reduced;
  reduced.reserve(residues.size());
  for (Value r : residues) reduced.push_back(r % modulus);
  return make(modulus, std::move(reduced), 0, {});
}

EventuallyPeriodicSet EventuallyPeriodicSet::progression(Value step, Value offset) {
  return affine(naturals(), step, offset);
}

EventuallyPeriodicSet EventuallyPeriodicSet::interval(Value lo, Value hi) {
  if (lo > hi) return empty();
  check_span(hi + 1, "interval");
  Bitmap prefix(hi + 1);
  for (Value n = lo; n <= hi; ++n) prefix.set(n);
  return SetBuilder::from_dense(std::move(prefix), Bitmap(1));
}

bool EventuallyPeriodicSet::contains(Value n) const {
  if (n < threshold_) return std::binary_search(exceptions_.begin(), exceptions_.end(), n);
  return std::binary_search(residues_.begin(), residues_.end(), n % modulus_);
}

bool EventuallyPeriodicSet::is_progression_union() const {
  return std::all_of(exceptions_.begin(), exceptions_.end(), [this](Value e) {
    return std::binary_search(residues_.begin(), residues_.end(), e % modulus_);
  });
}

std::string EventuallyPeriodicSet::to_string() const { return render_set(*this); }

Bitmap membership_bitmap(const EventuallyPeriodicSet& s, std::size_t length) {
  Bitmap out(length);
  for (Value e : s.exceptions()) {
    if (e < length) out.set(e);
  }
  const Value q = s.modulus();
  const Value t = s.threshold();
  for (Value r : s.residues()) {
    for (Value n = t + r; n < length; n += q) out.set(n);
  }
  return out;
}

namespace {

template <typename Op>
EventuallyPeriodicSet combine(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b, Op op) {
  const Value period = lcm_u64(a.modulus(), b.modulus());
  const Value threshold = std::max(a.threshold(), b.threshold());
  check_span(checked_add_u64(threshold, period), "set operation");
  const Bitmap ma = membership_bitmap(a, threshold);
  const Bitmap mb = membership_bitmap(b, threshold);
  Bitmap prefix(threshold);
  for (Value n = 0; n < threshold; ++n) prefix.assign(n, op(ma.test(n), mb.test(n)));
  const Bitmap ra = residue_bitmap(a);
  const Bitmap rb = residue_bitmap(b);
  Bitmap tail(period);
  for (Value r = 0; r < period; ++r) tail.assign(r, op(ra.test(r % a.modulus()), rb.test(r % b.modulus())));
  return SetBuilder::from_dense(std::move(prefix), tail);
}

}  // namespace

EventuallyPeriodicSet unite(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

EventuallyPeriodicSet intersect(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

EventuallyPeriodicSet difference(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}

EventuallyPeriodicSet complement(const EventuallyPeriodicSet& s) {
  return combine(s, EventuallyPeriodicSet::naturals(), [](bool x, bool) { return !x; });
}

bool is_subset(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b) {
  return difference(a, b).is_empty();
}

EventuallyPeriodicSet affine(const EventuallyPeriodicSet& s, Value k, Value h) {
  if (k == 0) throw ContractViolation("affine image needs k >= 1");
  if (s.is_empty()) return s;
  const Value q = s.modulus();
  const Value t = s.threshold();
  const Value period = checked_mul_u64(k, q);
  const Value finite_top = s.exceptions().empty() ? 0 : checked_add_u64(checked_mul_u64(k, s.exceptions().back()), h) + 1;
  const Value gen_top = s.residues().empty() ? 0 : checked_add_u64(checked_mul_u64(k, t + q - 1), h) + 1;
  check_span(checked_add_u64(std::max(finite_top, gen_top), period), "affine image");
  Bitmap finite(finite_top);
  for (Value e : s.exceptions()) finite.set(k * e + h);
  Bitmap generators(gen_top);
  for (Value r : s.residues()) generators.set(k * (t + r) + h);
  return SetBuilder::from_generators(period, finite, generators);
}

namespace {

// Operand of a sumset in generator shape: S = F ∪ (G + L*N) with F on [0, T)
// and G on [T, T + L).
struct SumOperand {
  Bitmap finite;
  Bitmap generators;
  Bitmap all;  // finite | generators
  std::size_t popcount = 0;
};

SumOperand to_operand(const EventuallyPeriodicSet& s, Value period) {
  const Value t = s.threshold();
  const Value length = s.residues().empty() ? std::max<Value>(t, 1) : t + period;
  SumOperand op{Bitmap(length), Bitmap(length), Bitmap(length), 0};
  for (Value e : s.exceptions()) op.finite.set(e);
  const Value q = s.modulus();
  if (!s.residues().empty()) {
    for (Value r : s.residues()) {
      for (Value n = t + r; n < t + period; n += q) op.generators.set(n);
    }
  }
  op.all |= op.finite;
  op.all |= op.generators;
  op.popcount = op.all.count();
  return op;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  return __builtin_add_overflow(a, b, &out) ? std::numeric_limits<std::uint64_t>::max() : out;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  return __builtin_mul_overflow(a, b, &out) ? std::numeric_limits<std::uint64_t>::max() : out;
}

// Independent check: direct shifted-OR sumset of the two membership bitmaps on
// [0, window], compared against the computed result pointwise.
void verify_sumset(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b,
                   const EventuallyPeriodicSet& result, const SumsetOptions& options) {
  const std::uint64_t period = lcm_u64(a.modulus(), b.modulus());
  std::uint64_t bound = saturating_add(a.threshold(), b.threshold());
  bound = saturating_add(bound, saturating_mul(a.modulus(), b.modulus()));
  bound = saturating_add(bound, saturating_add(a.modulus(), b.modulus()));
  bound = saturating_add(bound, saturating_mul(2, period));
  const std::size_t window = static_cast<std::size_t>(std::min<std::uint64_t>(bound, options.verify_window_cap));
  const Bitmap ma = membership_bitmap(a, window + 1);
  const Bitmap mb = membership_bitmap(b, window + 1);
  Bitmap brute(window + 1);
  ma.for_each_set([&](std::size_t x) { brute.or_shifted(mb, x); });
  for (std::size_t n = 0; n <= window; ++n) {
    if (brute.test(n) != result.contains(n)) {
      throw InternalConsistencyError("sumset of " + a.to_string() + " and " + b.to_string() +
                                     " disagrees with brute force at n = " + std::to_string(n));
    }
  }
}

}  // namespace

EventuallyPeriodicSet sumset(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b,
                             const SumsetOptions& options) {
  if (a.is_empty() || b.is_empty()) return EventuallyPeriodicSet::empty();

  const bool tail_a = !a.residues().empty();
  const bool tail_b = !b.residues().empty();
  const Value period = lcm_u64(tail_a ? a.modulus() : 1, tail_b ? b.modulus() : 1);
  const Value len_a = a.threshold() + (tail_a ? period : 1);
  const Value len_b = b.threshold() + (tail_b ? period : 1);
  check_span(checked_add_u64(len_a, len_b), "sumset");

  const SumOperand oa = to_operand(a, period);
  const SumOperand ob = to_operand(b, period);
  const std::size_t out_len = oa.all.size() + ob.all.size() - 1;
  Bitmap finite(out_len);
  Bitmap generators(out_len);

  const SumOperand& small = oa.popcount <= ob.popcount ? oa : ob;
  const SumOperand& large = oa.popcount <= ob.popcount ? ob : oa;
  // Rough word-operation counts of the two strategies.
  const std::uint64_t shift_cost = saturating_mul(small.popcount, large.all.size() / 64 + 1);
  std::uint64_t transform_len = 1;
  std::uint64_t log_len = 1;
  while (transform_len < out_len) {
    transform_len <<= 1;
    ++log_len;
  }
  const std::uint64_t transform_cost = 40 * transform_len * log_len;

  if (shift_cost <= transform_cost || out_len > detail::kMaxConvolutionLength) {
    small.finite.for_each_set([&](std::size_t x) {
      finite.or_shifted(large.finite, x);
      generators.or_shifted(large.generators, x);
    });
    small.generators.for_each_set([&](std::size_t x) { generators.or_shifted(large.all, x); });
  } else {
    const auto total = detail::convolve_counts(oa.all, ob.all);
    std::vector<std::uint32_t> fin;
    if (!oa.finite.none() && !ob.finite.none()) fin = detail::convolve_counts(oa.finite, ob.finite);
    for (std::size_t s = 0; s < out_len; ++s) {
      const std::uint32_t f = s < fin.size() ? fin[s] : 0;
      if (f > 0) finite.set(s);
      if (total[s] > f) generators.set(s);
    }
  }

  EventuallyPeriodicSet result = SetBuilder::from_generators(period, finite, generators);

  // Finite members shifted by a tail keep that tail's period, so only the
  // lcm bound holds in general ({1} ∪ 3N plus 9N contains 1 + 9N).
  if (period % result.modulus() != 0) {
    throw InternalConsistencyError("sumset tail period " + std::to_string(result.modulus()) +
                                   " does not divide " + std::to_string(period));
  }
  verify_sumset(a, b, result, options);
  return result;
}

EventuallyPeriodicSet k_fold_sumset(const EventuallyPeriodicSet& s, std::uint64_t k, const SumsetOptions& options) {
  if (k == 0) throw ContractViolation("k-fold sumset needs k >= 1");
  EventuallyPeriodicSet acc = s;
  for (std::uint64_t i = 1; i < k; ++i) acc = sumset(acc, s, options);
  return acc;
}

std::vector<Value> enumerate(const EventuallyPeriodicSet& s, Value limit) {
  std::vector<Value> out;
  for (Value e : s.exceptions()) {
    if (e <= limit) out.push_back(e);
  }
  if (s.residues().empty() || s.threshold() > limit) return out;
  const Value q = s.modulus();
  for (Value base = s.threshold();; base += q) {
    for (Value r : s.residues()) {
      if (base + r > limit) return out;
      out.push_back(base + r);
    }
    if (limit - base < q) return out;
  }
}

std::uint64_t count_in_range(const EventuallyPeriodicSet& s, Value lo, Value hi) {
  if (lo > hi) return 0;
  std::uint64_t total = 0;
  for (Value e : s.exceptions()) {
    if (e >= lo && e <= hi) ++total;
  }
  if (s.residues().empty()) return total;
  const Value q = s.modulus();
  const Value start = std::max(lo, s.threshold());
  if (start > hi) return total;
  // Members of the tail in [0, x): count_below(x) for x >= T.
  auto count_below = [&](Value x) {
    const Value blocks = x / q;
    const Value rem = x % q;
    const auto partial = static_cast<Value>(
        std::lower_bound(s.residues().begin(), s.residues().end(), rem) - s.residues().begin());
    return blocks * s.residues().size() + partial;
  };
  return total + count_below(hi + 1) - count_below(start);
}

}  // namespace bucklab
