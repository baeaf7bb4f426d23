#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bucklab/bitmap.hpp"

namespace bucklab::detail {

// Largest linear convolution length the exact transform supports.
inline constexpr std::size_t kMaxConvolutionLength = std::size_t{1} << 23;

// Exact acyclic convolution of two 0/1 vectors: out[s] = #{(i, j) : a_i = b_j = 1,
// i + j = s}. Uses a number-theoretic transform modulo 998244353; counts never
// reach the modulus because both inputs are shorter than 2^23.
std::vector<std::uint32_t> convolve_counts(const Bitmap& a, const Bitmap& b);

}  // namespace bucklab::detail
