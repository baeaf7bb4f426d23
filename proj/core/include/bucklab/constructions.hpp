#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bucklab/arith.hpp"
#include "bucklab/bitmap.hpp"
#include "bucklab/buck.hpp"
#include "bucklab/expansion.hpp"
#include "bucklab/interval_real.hpp"
#include "bucklab/periodic_set.hpp"
#include "bucklab/report.hpp"
#include "bucklab/staged_set.hpp"

namespace bucklab {

// A target density: exact, or an irrational given by enclosures.
using Alpha = std::variant<Rational, IntervalReal>;

std::string describe(const Alpha& alpha);

// ---- prescribed k-fold sumset densities -----------------------------------

// {0} ∪ (n*b*N + [1, a]); its k-fold sumset is {0} ∪ (n*b*N + [1, k*a]) with
// density k*a/(n*b) for k <= n. Requires b >= 1 and a <= b.
EventuallyPeriodicSet construct_rational(std::uint64_t a, std::uint64_t b, std::uint64_t n);

// Recomputes kA and checks it against the closed form and k*a/(n*b).
Report check_rational(std::uint64_t a, std::uint64_t b, std::uint64_t n, std::uint64_t k);

// The sets of one stage of the irrational construction. All are purely
// periodic with modulus q_1...q_i.
struct IrrationalStageSets {
  EventuallyPeriodicSet x;  // X_i
  EventuallyPeriodicSet y;  // Y_i = q_1...q_i * N + r_i
  Integer r;                // r_i
};

namespace detail {
struct IrrationalCache;
}

struct IrrationalConstruction {
  Expansion expansion;
  StagedSet staged;  // stage i: (A_i, B_i = A_i ∪ Y_i)

  IrrationalStageSets stage_sets(std::size_t i) const;

  std::shared_ptr<detail::IrrationalCache> cache_;
};

// Staged A = X_1 ∪ X_2 ∪ ... for an irrational alpha in (0, 1); the k-fold
// density intervals close in on k*alpha/n for every k <= n. The number of
// stages is the expansion length, which the modulus cap may cut short.
IrrationalConstruction construct_irrational(const IntervalReal& alpha, std::uint64_t n, std::size_t depth,
                                            const ExpansionOptions& options = {});

// For stages 1..stages: nesting, the enclosure of k*alpha/n inside each
// interval, the width bound sum_{j>=i} n! beta_j / (q_1...q_j) + 2^(1-i),
// b(kY_i) = 1/(q_1...q_i) <= 2^-i and the split b(kA_i) = (k/n) S_{i-1} + b(kX_i).
Report check_irrational(const IrrationalConstruction& c, std::uint64_t k, std::size_t stages);

// ---- sumsets of a block plus a sparse progression subset -------------------

struct SumsetBoundInstance {
  std::uint64_t n = 1;
  std::uint64_t t = 1;
  std::uint64_t q = 2;
  EventuallyPeriodicSet v;  // non-empty, inside q*N + t
  EventuallyPeriodicSet s;  // (q*N + [0, t-1]) ∪ v

  // Validates n*t < q, v non-empty and v ⊆ q*N + t.
  static SumsetBoundInstance make(std::uint64_t n, std::uint64_t t, std::uint64_t q, EventuallyPeriodicSet v);
};

// kt/q <= b_*(kS) <= b*(kS) = kt/q + b*(kV) <= (kt+1)/q for k <= n, together
// with the split kS = kV ∪ Z, Z ⊆ q*N + [0, kt-1] and Z ∩ kV = ∅.
Report verify_sumset_bound(const SumsetBoundInstance& inst, std::uint64_t k);

// ---- translates by a finite set -------------------------------------------

struct TranslateInstance {
  Alpha alpha;
  std::vector<std::uint64_t> b;  // normalized so that min = 0
  std::uint64_t shift = 0;       // the original min B
  std::uint64_t y = 0;           // max of the normalized B
  std::uint64_t k = 0;           // 0 for the endpoint cases alpha = 0, 1
  std::uint64_t h = 0;
  // Exact pieces; for irrational alpha they hold stage `reported_stage`.
  EventuallyPeriodicSet c;
  EventuallyPeriodicSet a;
  EventuallyPeriodicSet a_plus_b;
  std::optional<IrrationalConstruction> c_staged;
  std::optional<StagedSet> sum_staged;  // stage i: (A_i + B, A'_i + B)
  std::size_t reported_stage = 0;
  Report report;
};

// A = (k*N + [0, h-y-1]) ∪ (k*C + h - y) with the smallest k such that
// floor(k*alpha) >= 2y+1 and k*alpha is not an integer, h = floor(k*alpha),
// and C built for k*alpha - h. Checks A + B = (k*N + [0, h-1]) ∪ (k*C + h)
// and b(A + B) = alpha, exactly for rational alpha and by stage intervals
// otherwise.
TranslateInstance construct_translate(const Alpha& alpha, std::vector<std::uint64_t> b, std::size_t depth = 4,
                                      const ExpansionOptions& options = {});

// ---- an additive basis of order 2 with prescribed density ------------------

// Membership of {x^2 + y^2} on [0, limit].
Bitmap two_squares_sieve(std::uint64_t limit);

struct BasisOptions {
  std::uint64_t sieve_limit = 10000;
  std::vector<std::uint64_t> cover_moduli = {4, 8, 72, 5544};
  std::size_t depth = 4;  // stages for irrational alpha
};

// A = Q ∪ Y, Q the sums of two squares and Y a set of density alpha. Checks
// 0 ∈ A, gcd(A ∩ [0, 100]) = 1, 2A ⊇ [0, sieve_limit], the cover bounds for Q
// and the resulting density bracket for A.
Report construct_basis(const Alpha& alpha, const BasisOptions& options = {});

// ---- a set in the domain whose double is not --------------------------------

// Lexicographically least (y1, y2, y3, y4) with y1^2 + ... + y4^2 = h.
std::array<std::uint64_t, 4> four_squares(std::uint64_t h);

// With V = {n! + n} and A = {x^2 + y^2 : x, y in V}: the witness
// n_i = (h+1)k + y_i and the congruence sum (n_i! + n_i)^2 ≡ h (mod k),
// evaluated in Z/kZ.
Report counterexample_witness(std::uint64_t k, std::uint64_t h);

struct SparsityBound {
  std::uint64_t m = 0;
  std::uint64_t count = 0;       // |V ∩ [1, floor(sqrt m)]|
  Integer bound;                 // count^4 >= |2A ∩ [1, m]|
  Rational ratio;                // bound / m
  Integer factorial_sup;         // sup{n^4 : n! <= sqrt m}
};

SparsityBound counterexample_sparsity(std::uint64_t m);

// Every class mod k (k <= kmax) meets 2A, and the counting bound at m leaves
// no room for a progression: b*(2A) = 1 and b_*(2A) = 0.
Report counterexample_report(std::uint64_t kmax, std::uint64_t m = 1000000000000ULL);

}  // namespace bucklab
