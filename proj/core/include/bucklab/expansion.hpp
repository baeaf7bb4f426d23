#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bucklab/arith.hpp"
#include "bucklab/interval_real.hpp"
#include "bucklab/report.hpp"

namespace bucklab {

// Term i of the positional representation
//   alpha = sum_{i >= 1} n! * beta_i / (q_1 ... q_i),
// together with the remainder alpha_i = q_1...q_i * (alpha - partial sum).
struct ExpansionStep {
  std::size_t index = 0;
  Integer q;
  Integer beta;
  Integer modulus_product;  // q_1 ... q_i
  Enclosure remainder;      // encloses alpha_i, strictly inside (0, 1)
};

struct ExpansionOptions {
  Integer modulus_cap = 1000000000;
  std::size_t refinement_budget = kDefaultRefinementBudget;
  std::uint64_t search_limit = 10000000;  // candidate q values per step
};

struct Expansion {
  IntervalReal alpha;
  std::uint64_t n = 1;
  std::vector<ExpansionStep> steps;
  std::size_t requested_depth = 0;
  // Set when the modulus cap ended the expansion before requested_depth.
  bool budget_reached = false;
  std::string stop_reason;

  // alpha_i as an interval real (alpha_0 = alpha).
  IntervalReal remainder_real(std::size_t i) const;
};

// Smallest q with gcd(q, coprime_to) = 1 and floor(q * x) a positive multiple
// of n!. x must be an irrational in (0, 1); a rational x can exhaust the
// refinement or search budget, which throws UndecidableAtPrecision.
Integer find_q(const IntervalReal& x, const Integer& coprime_to, std::uint64_t n,
               const ExpansionOptions& options = {});

// Up to `depth` terms, choosing the smallest admissible q at each step.
Expansion expand(const IntervalReal& alpha, std::uint64_t n, std::size_t depth,
                 const ExpansionOptions& options = {});

// sum_{j <= i} n! beta_j / (q_1 ... q_j); 0 for i = 0.
Rational partial_sum(const Expansion& e, std::size_t i);

// Re-derives every step invariant from alpha: coprimality, the floor
// divisibility, alpha_i in (0, 1), the beta bracket and |alpha - S_i| < 2^-i.
Report check_expansion(const Expansion& e, std::size_t refinement_budget = kDefaultRefinementBudget);

}  // namespace bucklab
