#include "convolution.hpp"

#include <utility>

#include "bucklab/errors.hpp"

namespace bucklab::detail {
namespace {

constexpr std::uint32_t kMod = 998244353;  // 119 * 2^23 + 1
constexpr std::uint32_t kGenerator = 3;

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % kMod);
}

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t e) {
  std::uint32_t r = 1;
  while (e != 0) {
    if (e & 1U) r = mul_mod(r, base);
    base = mul_mod(base, base);
    e >>= 1;
  }
  return r;
}

void transform(std::vector<std::uint32_t>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::uint32_t> roots(n / 2 + 1);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint32_t w = pow_mod(kGenerator, (kMod - 1) / len);
    if (inverse) w = pow_mod(w, kMod - 2);
    const std::size_t half = len / 2;
    roots[0] = 1;
    for (std::size_t k = 1; k < half; ++k) roots[k] = mul_mod(roots[k - 1], w);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint32_t u = a[i + k];
        const std::uint32_t v = mul_mod(a[i + k + half], roots[k]);
        a[i + k] = u + v >= kMod ? u + v - kMod : u + v;
        a[i + k + half] = u >= v ? u - v : u + kMod - v;
      }
    }
  }
  if (inverse) {
    const std::uint32_t inv_n = pow_mod(static_cast<std::uint32_t>(n % kMod), kMod - 2);
    for (auto& x : a) x = mul_mod(x, inv_n);
  }
}

}  // namespace

std::vector<std::uint32_t> convolve_counts(const Bitmap& a, const Bitmap& b) {
  if (a.size() == 0 || b.size() == 0) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  if (out_len > kMaxConvolutionLength) {
    throw CapacityExceeded("convolution length " + std::to_string(out_len) + " exceeds " +
                           std::to_string(kMaxConvolutionLength));
  }
  std::size_t n = 1;
  while (n < out_len) n <<= 1;
  std::vector<std::uint32_t> fa(n, 0);
  std::vector<std::uint32_t> fb(n, 0);
  a.for_each_set([&](std::size_t i) { fa[i] = 1; });
  b.for_each_set([&](std::size_t i) { fb[i] = 1; });
  transform(fa, false);
  transform(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] = mul_mod(fa[i], fb[i]);
  transform(fa, true);
  fa.resize(out_len);
  return fa;
}

}  // namespace bucklab::detail
