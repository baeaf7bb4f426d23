#pragma once

#include <cstdint>
#include <functional>

#include "bucklab/arith.hpp"
#include "bucklab/bitmap.hpp"
#include "bucklab/periodic_set.hpp"
#include "bucklab/report.hpp"

namespace bucklab {

// Upper Buck density. On eventually periodic sets it is |R|/q: the tail
// residue classes form the cheapest progression cover and the finite part has
// density zero.
Rational buck_upper(const EventuallyPeriodicSet& s);
// Lower Buck density; equals buck_upper on this class.
Rational buck_lower(const EventuallyPeriodicSet& s);
// Buck density of a set known to lie in its domain (every eventually periodic set does).
inline Rational buck(const EventuallyPeriodicSet& s) { return buck_upper(s); }

// Instances of normalization, monotonicity, subadditivity, the k*X + h
// scaling rule and conjugacy for the given arguments. Failures are report
// entries, never exceptions.
Report check_axioms(const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b, std::uint64_t k,
                    std::uint64_t h);

struct AdditivityResult {
  Rational upper;  // b*(X ∪ Y)
  Rational lower;  // b_*(X ∪ Y)
  Report report;
};

// Disjoint-cover additivity: with X ⊆ A, Y ⊆ B, A ∩ B = ∅ and A, B finite
// unions of progressions, both Buck densities of X ∪ Y split as sums.
// Throws ContractViolation when the covers do not satisfy the preconditions.
AdditivityResult additivity_disjoint(const EventuallyPeriodicSet& x, const EventuallyPeriodicSet& y,
                                     const EventuallyPeriodicSet& a, const EventuallyPeriodicSet& b);

// Residues mod m attained by a residue-determined set.
using ResidueProfile = std::function<Bitmap(std::uint64_t modulus)>;

// {x^2 + y^2 mod m : x, y in [0, m)}.
ResidueProfile sums_of_two_squares_residues();

// |attained residues| / m: the density of the cover m*N + attained, an upper
// bound for the upper Buck density of any set with that residue profile.
Rational modulus_cover_bound(const ResidueProfile& profile, std::uint64_t modulus);

}  // namespace bucklab
