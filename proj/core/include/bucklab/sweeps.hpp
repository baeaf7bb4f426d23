#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bucklab/interval_real.hpp"
#include "bucklab/periodic_set.hpp"
#include "bucklab/report.hpp"

namespace bucklab {

// Random eventually periodic set with modulus <= max_modulus and threshold
// <= max_threshold, drawn from `rng`.
EventuallyPeriodicSet random_set(std::mt19937_64& rng, std::uint64_t max_modulus, std::uint64_t max_threshold);

// The irrationals used by the standard suites: sqrt(2)/2, the golden
// conjugate (sqrt(5)-1)/2 and sqrt(3)-1.
std::vector<std::pair<std::string, IntervalReal>> standard_irrationals();

// Every a/b with b <= bmax, 0 <= a <= b, n <= nmax, k <= n.
Report sweep_rational_grid(std::uint64_t bmax = 8, std::uint64_t nmax = 5);

// buck(mN + H) = |H|/m, finite sets have density 0, finite perturbations
// leave it unchanged, and buck_lower = 1 - buck_upper(complement).
Report sweep_progression_density(std::size_t count, std::uint64_t seed, std::uint64_t max_modulus = 30);

// Disjoint-cover additivity on random covers and subsets.
Report sweep_additivity(std::size_t count, std::uint64_t seed, std::uint64_t max_modulus = 30);

// The block-plus-sparse-subset chain for every k <= n on random instances.
Report sweep_sumset_bound(std::size_t count, std::uint64_t seed, std::uint64_t max_q = 50);

// Expansion invariants for each alpha and n, up to `depth` terms under the
// modulus cap.
Report sweep_expansions(const std::vector<std::uint64_t>& ns, std::size_t depth);

// Irrational sandwich checks for each alpha with the given n, stages and k.
Report sweep_irrational(std::uint64_t n, std::size_t stages, const std::vector<std::uint64_t>& ks);

}  // namespace bucklab
