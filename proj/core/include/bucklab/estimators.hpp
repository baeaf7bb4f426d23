#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bucklab/arith.hpp"
#include "bucklab/periodic_set.hpp"
#include "bucklab/report.hpp"
#include "bucklab/staged_set.hpp"

namespace bucklab {

// Membership of a set of naturals, with an optional fast counter on [lo, hi].
struct MembershipOracle {
  std::function<bool(std::uint64_t)> contains;
  std::function<std::uint64_t(std::uint64_t lo, std::uint64_t hi)> count;  // may be empty
  std::string description;

  std::uint64_t count_in(std::uint64_t lo, std::uint64_t hi) const;
};

MembershipOracle oracle_of(const EventuallyPeriodicSet& s);
MembershipOracle oracle_of(std::function<bool(std::uint64_t)> contains, std::string description);

// |S ∩ [1, N]| / N.
Rational prefix_ratio(const MembershipOracle& s, std::uint64_t n);

// Least and greatest |S ∩ W| / L over the windows W = [s, s+L-1] ⊆ [1, N].
std::pair<Rational, Rational> window_extrema(const MembershipOracle& s, std::uint64_t n, std::uint64_t length);

// (sum of 1/m over m in S ∩ [1, N]) / (sum of 1/m over [1, N]), exact.
Rational log_ratio(const MembershipOracle& s, std::uint64_t n);

// A finite-N proxy for a density. Only monotone estimators (S ⊆ S' implies
// value(S) <= value(S')) give sound sandwich checks.
struct Estimator {
  std::string name;
  std::function<Rational(const MembershipOracle&, std::uint64_t)> evaluate;
};

Estimator prefix_ratio_estimator();
Estimator log_ratio_estimator();
// Looks up "prefix" or "log"; throws ContractViolation otherwise.
Estimator estimator_named(const std::string& name);

// For stage i of a staged set, the estimate of the target lies between the
// estimates of inner_i and outer_i; the check asserts that this range sits
// inside [buck(inner_i) - slack, buck(outer_i) + slack].
Report sandwich_check(const StagedSet& s, const Estimator& estimator, std::size_t stage, std::uint64_t n,
                      const Rational& slack);

// ---- factorial intervals ---------------------------------------------------

// One checkpoint of the sets X = E ∩ 2N and Y = F ∩ (2N+1), with
// E = ∪ [(4j)!, (4j+1)!] and F = ∪ [(4j+2)!, (4j+3)!] over j >= 1.
struct FactorialCheckpoint {
  std::uint64_t n = 0;
  Integer at;  // N = (4n+1)! or (4n+3)!
  Integer count_x;
  Integer count_y;
  Rational ratio_x;
  Rational ratio_y;
  Rational ratio_union;
};

struct FactorialTable {
  std::vector<FactorialCheckpoint> rows;  // alternating (4n+1)!, (4n+3)!
  Report report;
};

// |X ∩ [1, N]| by summing closed-form counts over the intervals.
Integer factorial_interval_count(bool odd, unsigned first_offset, const Integer& limit);

// Closed-form counts for n = 1..nmax (nmax <= 4), the prefix ratios at the
// checkpoints, and Buck values of X, Y, X ∪ Y from residue covers, showing
// that Buck density splits over the disjoint covers 2N, 2N+1 while the upper
// asymptotic density does not.
FactorialTable dstar_counterexample(unsigned nmax, std::uint64_t max_cover_modulus = 64);

}  // namespace bucklab
