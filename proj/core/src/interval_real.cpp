#include "bucklab/interval_real.hpp"

#include <mutex>
#include <utility>
#include <vector>

#include "bucklab/errors.hpp"

namespace bucklab {

struct IntervalReal::State {
  Producer producer;
  std::string description;
  std::mutex mutex;
  std::vector<Enclosure> levels;
};

IntervalReal::IntervalReal(Producer producer, std::string description)
    : state_(std::make_shared<State>()) {
  state_->producer = std::move(producer);
  state_->description = std::move(description);
}

Enclosure IntervalReal::enclosure(std::size_t level) const {
  std::lock_guard lock(state_->mutex);
  auto& levels = state_->levels;
  while (levels.size() <= level) {
    Enclosure next = state_->producer(levels.size());
    if (next.lo > next.hi) {
      throw InternalConsistencyError("interval producer returned an inverted enclosure for " +
                                     state_->description);
    }
    if (!levels.empty()) {
      // Enforce nesting against the previous level.
      const Enclosure& prev = levels.back();
      if (!next.intersects(prev)) {
        throw InternalConsistencyError("interval producer for " + state_->description +
                                       " returned disjoint enclosures");
      }
      if (next.lo < prev.lo) next.lo = prev.lo;
      if (next.hi > prev.hi) next.hi = prev.hi;
    }
    levels.push_back(std::move(next));
  }
  return levels[level];
}

const std::string& IntervalReal::description() const { return state_->description; }

IntervalReal IntervalReal::sqrt_of(const Rational& r) {
  if (r.sign() < 0) {
    throw ContractViolation("square root of negative rational " + r.to_string());
  }
  const Integer p = r.numerator();
  const Integer q = r.denominator();
  // sqrt(p/q) = sqrt(p*q)/q; at level j use isqrt(p*q*4^j) / (q*2^j).
  return IntervalReal(
      [p, q](std::size_t level) {
        const Integer two_j = pow2(level);
        const Integer s = isqrt(p * q * two_j * two_j);
        const Integer den = q * two_j;
        return Enclosure{Rational(s, den), Rational(s + 1, den)};
      },
      "sqrt(" + r.to_string() + ")");
}

IntervalReal IntervalReal::golden_conjugate() {
  IntervalReal x = sqrt_of(Rational(5)).affine(Rational(1, 2), Rational(-1, 2));
  x.state_->description = "golden-conjugate";
  return x;
}

IntervalReal IntervalReal::from_digits(unsigned base,
                                       std::function<std::optional<unsigned>(std::size_t)> digit,
                                       std::string description) {
  if (base < 2) throw ContractViolation("digit base must be at least 2");
  struct Prefix {
    std::mutex mutex;
    std::vector<unsigned> digits;
  };
  auto prefix = std::make_shared<Prefix>();
  return IntervalReal(
      [base, digit = std::move(digit), prefix, description](std::size_t level) {
        std::lock_guard lock(prefix->mutex);
        while (prefix->digits.size() < level) {
          const auto d = digit(prefix->digits.size() + 1);
          if (!d) {
            throw UndecidableAtPrecision("digit stream " + description + " exhausted after " +
                                         std::to_string(prefix->digits.size()) + " digits");
          }
          if (*d >= base) {
            throw ContractViolation("digit " + std::to_string(*d) + " out of range for base " +
                                    std::to_string(base));
          }
          prefix->digits.push_back(*d);
        }
        Integer num = 0;
        Integer den = 1;
        for (std::size_t j = 0; j < level; ++j) {
          num = num * base + prefix->digits[j];
          den *= base;
        }
        return Enclosure{Rational(num, den), Rational(num + 1, den)};
      },
      std::move(description));
}

IntervalReal IntervalReal::affine(const Rational& scale, const Rational& shift) const {
  const IntervalReal base = *this;
  std::string desc = scale.to_string() + "*(" + description() + ")+" + shift.to_string();
  return IntervalReal(
      [base, scale, shift](std::size_t level) {
        const Enclosure e = base.enclosure(level);
        Rational a = scale * e.lo + shift;
        Rational b = scale * e.hi + shift;
        if (scale.sign() < 0) std::swap(a, b);
        return Enclosure{std::move(a), std::move(b)};
      },
      std::move(desc));
}

Integer exact_floor_scaled(const IntervalReal& x, const Integer& scale, std::size_t budget) {
  if (scale <= 0) throw ContractViolation("exact_floor_scaled needs a positive scale");
  const Rational s(scale);
  for (std::size_t level = 0; level <= budget; ++level) {
    const Enclosure e = x.enclosure(level);
    const Integer f = (s * e.lo).floor();
    if (s * e.hi < Rational(f + 1)) return f;
  }
  throw UndecidableAtPrecision("floor(" + scale.get_str() + " * " + x.description() +
                               ") undecided after " + std::to_string(budget) +
                               " refinements; input may be rational");
}

Enclosure certify_open_unit(const IntervalReal& x, std::size_t budget) {
  for (std::size_t level = 0; level <= budget; ++level) {
    Enclosure e = x.enclosure(level);
    if (e.inside_open_unit()) return e;
    if (e.hi <= Rational(0) || e.lo >= Rational(1)) {
      throw ContractViolation(x.description() + " lies outside (0, 1)");
    }
  }
  throw UndecidableAtPrecision("could not separate " + x.description() + " from 0 and 1 after " +
                               std::to_string(budget) + " refinements");
}

Enclosure enclosure_with_width(const IntervalReal& x, const Rational& max_width, std::size_t budget) {
  for (std::size_t level = 0; level <= budget; ++level) {
    Enclosure e = x.enclosure(level);
    if (e.width() <= max_width) return e;
  }
  throw UndecidableAtPrecision("enclosure of " + x.description() + " did not reach width " +
                               max_width.to_string());
}

std::optional<Enclosure> refine_until(const IntervalReal& x, const std::function<bool(const Enclosure&)>& pred,
                                      std::size_t budget) {
  for (std::size_t level = 0; level <= budget; ++level) {
    Enclosure e = x.enclosure(level);
    if (pred(e)) return e;
  }
  return std::nullopt;
}

}  // namespace bucklab
