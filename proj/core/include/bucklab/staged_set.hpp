#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "bucklab/arith.hpp"
#include "bucklab/periodic_set.hpp"

namespace bucklab {

// One level of a sandwich inner ⊆ target ⊆ outer, with a certified bound on
// buck(outer) - buck(inner).
struct Stage {
  EventuallyPeriodicSet inner;
  EventuallyPeriodicSet outer;
  Rational error;
};

struct DensityInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool within(const DensityInterval& o) const { return o.lo <= lo && hi <= o.hi; }
};

// A set pinned down by nested eventually periodic approximations
//   inner_1 ⊆ inner_2 ⊆ ... ⊆ target ⊆ ... ⊆ outer_2 ⊆ outer_1.
// Stages are produced lazily, memoized, and each one is checked against its
// predecessor before it is handed out; a violated containment throws
// InternalConsistencyError.
class StagedSet {
 public:
  using Producer = std::function<Stage(std::size_t stage)>;

  StagedSet(Producer producer, std::size_t stage_count, std::string description);

  // inner_i = outer_i = s at every stage, error 0.
  static StagedSet constant(const EventuallyPeriodicSet& s, std::size_t stage_count = 1);

  std::size_t stage_count() const;
  const std::string& description() const;

  // 1-based; throws StageBudgetReached past stage_count().
  const Stage& stage(std::size_t i) const;

  // [buck(k * inner_i), buck(k * outer_i)], nested inside the interval of
  // stage i - 1.
  DensityInterval interval(std::size_t i, std::uint64_t k) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

inline DensityInterval staged_density_interval(const StagedSet& s, std::size_t i, std::uint64_t k) {
  return s.interval(i, k);
}

}  // namespace bucklab
