#include "bucklab/expansion.hpp"

#include "bucklab/errors.hpp"

namespace bucklab {

IntervalReal Expansion::remainder_real(std::size_t i) const {
  if (i > steps.size()) throw ContractViolation("remainder index past the expansion");
  if (i == 0) return alpha;
  const Rational sum = partial_sum(*this, i);
  const Integer& product = steps[i - 1].modulus_product;
  return alpha.affine(Rational(product), -(sum * Rational(product)));
}

Integer find_q(const IntervalReal& x, const Integer& coprime_to, std::uint64_t n, const ExpansionOptions& options) {
  if (n == 0) throw ContractViolation("n must be positive");
  certify_open_unit(x, options.refinement_budget);
  const Integer fact = factorial(n);
  // q <= n! gives floor(q x) <= q - 1 < n!, so the search starts above n!.
  Integer q = fact + 1;
  for (std::uint64_t tried = 0; tried < options.search_limit; ++tried, ++q) {
    if (gcd(q, coprime_to) != 1) continue;
    const Integer f = exact_floor_scaled(x, q, options.refinement_budget);
    if (f > 0 && f % fact == 0) return q;
  }
  throw UndecidableAtPrecision("no admissible q among " + std::to_string(options.search_limit) +
                               " candidates for " + x.description() + "; input may be rational");
}

Expansion expand(const IntervalReal& alpha, std::uint64_t n, std::size_t depth, const ExpansionOptions& options) {
  if (n == 0) throw ContractViolation("n must be positive");
  Expansion e{alpha, n, {}, depth, false, {}};
  const Integer fact = factorial(n);
  const Integer n_big(static_cast<unsigned long>(n));
  certify_open_unit(alpha, options.refinement_budget);

  IntervalReal current = alpha;
  Integer product = 1;    // q_1 ... q_{i-1}
  Integer numerator = 0;  // product * partial sum, an integer
  const Rational max_width(Integer(1), pow2(32));

  for (std::size_t i = 1; i <= depth; ++i) {
    const Integer q = find_q(current, n_big * product, n, options);
    if (product * q > options.modulus_cap) {
      e.budget_reached = true;
      e.stop_reason = "stage budget reached: q_1...q_" + std::to_string(i) + " = " + Integer(product * q).get_str() +
                      " exceeds cap " + options.modulus_cap.get_str();
      break;
    }
    const Integer floor_value = exact_floor_scaled(current, q, options.refinement_budget);
    const Integer beta = floor_value / fact;
    const Integer digit = fact * beta;

    const IntervalReal recursive = current.affine(Rational(q), Rational(-digit));
    product *= q;
    numerator = numerator * q + digit;
    const IntervalReal direct = alpha.affine(Rational(product), Rational(-numerator));

    Enclosure enclosure = certify_open_unit(direct, options.refinement_budget);
    if (enclosure.width() > max_width) enclosure = enclosure_with_width(direct, max_width, options.refinement_budget);
    // The two routes to alpha_i must agree at every level we looked at.
    for (std::size_t level = 0; level <= 8; ++level) {
      if (!recursive.enclosure(level).intersects(direct.enclosure(level))) {
        throw InternalConsistencyError("recursive and direct enclosures of alpha_" + std::to_string(i) +
                                       " are disjoint at level " + std::to_string(level));
      }
    }
    e.steps.push_back(ExpansionStep{i, q, beta, product, enclosure});
    current = direct;
  }
  return e;
}

Rational partial_sum(const Expansion& e, std::size_t i) {
  if (i > e.steps.size()) throw ContractViolation("partial sum index past the expansion");
  const Integer fact = factorial(e.n);
  Rational sum(0);
  for (std::size_t j = 0; j < i; ++j) {
    sum += Rational(fact * e.steps[j].beta, e.steps[j].modulus_product);
  }
  return sum;
}

namespace {

template <typename Pred>
bool decide(const IntervalReal& x, std::size_t budget, Pred pred) {
  return refine_until(x, pred, budget).has_value();
}

}  // namespace

Report check_expansion(const Expansion& e, std::size_t refinement_budget) {
  Report r;
  r.title = "expansion invariants";
  const Integer fact = factorial(e.n);
  const Integer n_big(static_cast<unsigned long>(e.n));
  Integer product = 1;
  Rational previous_sum(0);
  r.value("n", n_big.get_str());
  r.value("steps", std::to_string(e.steps.size()));

  for (std::size_t i = 1; i <= e.steps.size(); ++i) {
    const ExpansionStep& s = e.steps[i - 1];
    const std::string tag = "step " + std::to_string(i) + ": ";
    const IntervalReal prev = e.remainder_real(i - 1);

    r.check(tag + "gcd(q_i, n q_0...q_{i-1}) = 1", gcd(s.q, n_big * product) == 1, "q = " + s.q.get_str());
    r.check(tag + "q_i >= 2 and q_i > n!", s.q >= 2 && s.q > fact);
    product *= s.q;
    r.check(tag + "modulus product", product == s.modulus_product);

    const Integer fl = exact_floor_scaled(prev, s.q, refinement_budget);
    r.check(tag + "floor(q_i alpha_{i-1}) in n! N+", fl > 0 && fl % fact == 0, "floor = " + fl.get_str());
    r.check(tag + "beta_i = floor(q_i alpha_{i-1} / n!)", fl / fact == s.beta);

    const Rational q(s.q);
    const Rational digit(fact * s.beta);
    const bool bracket = decide(prev, refinement_budget, [&](const Enclosure& enc) {
      return q * enc.hi - Rational(1) < digit && digit < q * enc.lo;
    });
    r.check(tag + "q_i alpha_{i-1} - 1 < n! beta_i < q_i alpha_{i-1}", bracket);

    r.check(tag + "alpha_i in (0, 1)", s.remainder.inside_open_unit() &&
                                           decide(e.remainder_real(i), refinement_budget,
                                                  [](const Enclosure& enc) { return enc.inside_open_unit(); }));

    const Rational sum = partial_sum(e, i);
    const Rational bound(Integer(1), pow2(i));
    const bool close = decide(e.alpha, refinement_budget, [&](const Enclosure& enc) {
      return enc.hi - sum < bound && sum - enc.lo < bound;
    });
    r.check(tag + "|alpha - S_i| < 2^-i", close, "S_i = " + sum.to_string());
    const bool below = decide(e.alpha, refinement_budget, [&](const Enclosure& enc) { return sum < enc.lo; });
    r.check(tag + "S_{i-1} < S_i < alpha", previous_sum < sum && below);
    previous_sum = sum;
  }
  if (e.budget_reached) r.value("stop", e.stop_reason);
  return r;
}

}  // namespace bucklab
