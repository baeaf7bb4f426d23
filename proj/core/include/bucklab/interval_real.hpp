#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "bucklab/arith.hpp"

namespace bucklab {

// Closed rational interval [lo, hi].
struct Enclosure {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool inside_open_unit() const { return lo > Rational(0) && hi < Rational(1); }
  bool intersects(const Enclosure& o) const { return lo <= o.hi && o.lo <= hi; }
};

inline constexpr std::size_t kDefaultRefinementBudget = 4096;

// A real number given by a demand-driven stream of nested rational
// enclosures. Level j+1 is at most half as wide as level j. Copies share the
// memoized stream; refinement is guarded by a mutex so copies may be read from
// several threads.
//
// Irrationality is a caller-asserted contract: a rational value sitting on an
// integer boundary surfaces as UndecidableAtPrecision, not as a wrong answer.
class IntervalReal {
 public:
  using Producer = std::function<Enclosure(std::size_t level)>;

  IntervalReal(Producer producer, std::string description);

  // sqrt(r) for r >= 0; level j has width 1/(den(r) * 2^j).
  static IntervalReal sqrt_of(const Rational& r);
  // (sqrt(5) - 1) / 2.
  static IntervalReal golden_conjugate();
  // 0.d1 d2 d3 ... in the given base; `digit(j)` returns d_j (1-based) or
  // nullopt once the stream is exhausted.
  static IntervalReal from_digits(unsigned base, std::function<std::optional<unsigned>(std::size_t)> digit,
                                  std::string description);

  // scale * x + shift. Nestedness and the halving rate are preserved.
  IntervalReal affine(const Rational& scale, const Rational& shift) const;

  Enclosure enclosure(std::size_t level) const;
  const std::string& description() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

// floor(scale * x), refining until the enclosure of scale * x clears the next
// integer. Throws UndecidableAtPrecision after `budget` refinements.
Integer exact_floor_scaled(const IntervalReal& x, const Integer& scale,
                           std::size_t budget = kDefaultRefinementBudget);

// Refines until the enclosure lies strictly inside (0, 1) and returns it.
// Throws UndecidableAtPrecision if the budget runs out first.
Enclosure certify_open_unit(const IntervalReal& x, std::size_t budget = kDefaultRefinementBudget);

// First enclosure satisfying pred, or nullopt once the budget is spent.
std::optional<Enclosure> refine_until(const IntervalReal& x, const std::function<bool(const Enclosure&)>& pred,
                                      std::size_t budget = kDefaultRefinementBudget);

// First enclosure of width <= max_width.
Enclosure enclosure_with_width(const IntervalReal& x, const Rational& max_width,
                               std::size_t budget = kDefaultRefinementBudget);

}  // namespace bucklab
