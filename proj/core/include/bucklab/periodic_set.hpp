#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bucklab/bitmap.hpp"

namespace bucklab {

// A subset S of N = {0, 1, 2, ...} that agrees with a union of residue classes
// mod q from some threshold on:
//
//   n in S  <=>  n in E               for n < T
//   n in S  <=>  (n mod q) in R       for n >= T
//
// Values are always canonical: q is the minimal eventual period, T is the
// least multiple of q from which the periodic description holds, and the
// representation is unique, so operator== decides set equality.
class EventuallyPeriodicSet {
 public:
  using Value = std::uint64_t;

  EventuallyPeriodicSet() = default;  // the empty set

  // Validating constructor: residues in [0, q), exceptions in [0, T), q | T.
  // Throws ContractViolation otherwise.
  static EventuallyPeriodicSet make(Value modulus, std::vector<Value> residues, Value threshold,
                                    std::vector<Value> exceptions);

  static EventuallyPeriodicSet empty() { return {}; }
  static EventuallyPeriodicSet naturals();
  static EventuallyPeriodicSet finite(std::vector<Value> members);
  // m*N + residues, residues taken mod m.
  static EventuallyPeriodicSet residue_classes(Value modulus, const std::vector<Value>& residues);
  // k*N + h.
  static EventuallyPeriodicSet progression(Value step, Value offset);
  // The discrete interval [lo, hi] (empty if lo > hi).
  static EventuallyPeriodicSet interval(Value lo, Value hi);

  bool contains(Value n) const;

  Value modulus() const { return modulus_; }
  const std::vector<Value>& residues() const { return residues_; }
  Value threshold() const { return threshold_; }
  const std::vector<Value>& exceptions() const { return exceptions_; }

  bool is_empty() const { return residues_.empty() && exceptions_.empty(); }
  bool is_finite() const { return residues_.empty(); }
  // True when S is empty or a finite union of arithmetic progressions k*N + h,
  // i.e. every exceptional member also lies in a tail residue class.
  bool is_progression_union() const;

  // Canonical text form, e.g. "{0} + mod 4 {1} from 4".
  std::string to_string() const;

  friend bool operator==(const EventuallyPeriodicSet&, const EventuallyPeriodicSet&) = default;

 private:
  friend struct SetBuilder;

  Value modulus_ = 1;
  std::vector<Value> residues_;
  Value threshold_ = 0;
  std::vector<Value> exceptions_;
};

// Largest number of positions (threshold + modulus) a dense set operation may
// materialize.
inline constexpr std::size_t kMaxDenseSpan = std::size_t{1} << 28;

// Window cap for the brute-force cross-check run after every sumset.
inline constexpr std::size_t kDefaultSumsetVerifyWindow = std::size_t{1} << 14;

struct SumsetOptions {
  std::size_t verify_window_cap = kDefaultSumsetVerifyWindow;
};

EventuallyPeriodicSet unite(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b);
EventuallyPeriodicSet intersect(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b);
EventuallyPeriodicSet complement(const EventuallyPeriodicSet& s);
EventuallyPeriodicSet difference(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b);
bool is_subset(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b);

// k*S + h = {k*x + h : x in S}, k >= 1.
EventuallyPeriodicSet affine(const EventuallyPeriodicSet& s, EventuallyPeriodicSet::Value k,
                             EventuallyPeriodicSet::Value h);

// Exact sumset {x + y : x in a, y in b}. The result is cross-checked against a
// brute-force sumset on an initial window; a mismatch throws
// InternalConsistencyError.
EventuallyPeriodicSet sumset(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b,
                             const SumsetOptions& options = {});
EventuallyPeriodicSet k_fold_sumset(const EventuallyPeriodicSet& s, std::uint64_t k,
                                    const SumsetOptions& options = {});

// Members <= limit, ascending.
std::vector<EventuallyPeriodicSet::Value> enumerate(const EventuallyPeriodicSet& s,
                                                    EventuallyPeriodicSet::Value limit);
// |S ∩ [lo, hi]| in closed form.
std::uint64_t count_in_range(const EventuallyPeriodicSet& s, EventuallyPeriodicSet::Value lo,
                             EventuallyPeriodicSet::Value hi);
// Indicator of S on [0, length).
Bitmap membership_bitmap(const EventuallyPeriodicSet& s, std::size_t length);

}  // namespace bucklab
