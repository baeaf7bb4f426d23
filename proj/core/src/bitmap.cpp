#include "bucklab/bitmap.hpp"

#include <algorithm>

namespace bucklab {

std::size_t Bitmap::count() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(__builtin_popcountll(w));
  return total;
}

bool Bitmap::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t Bitmap::find_next(std::size_t from) const {
  if (from >= size_) return size_;
  std::size_t w = from >> 6;
  std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (bits != 0) {
      const std::size_t i = (w << 6) + static_cast<std::size_t>(__builtin_ctzll(bits));
      return std::min(i, size_);
    }
    if (++w >= words_.size()) return size_;
    bits = words_[w];
  }
}

void Bitmap::or_shifted(const Bitmap& other, std::size_t shift) {
  if (shift >= size_) return;
  const std::size_t word_shift = shift >> 6;
  const unsigned bit_shift = static_cast<unsigned>(shift & 63);
  const std::size_t n = words_.size();
  for (std::size_t src = 0; src < other.words_.size(); ++src) {
    const std::size_t dst = src + word_shift;
    if (dst >= n) break;
    const std::uint64_t w = other.words_[src];
    if (w == 0) continue;
    words_[dst] |= w << bit_shift;
    if (bit_shift != 0 && dst + 1 < n) words_[dst + 1] |= w >> (64 - bit_shift);
  }
  clear_tail();
}

Bitmap& Bitmap::operator|=(const Bitmap& other) {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t i = 0; i < n; ++i) words_[i] |= other.words_[i];
  clear_tail();
  return *this;
}

void Bitmap::clear_tail() {
  if ((size_ & 63) != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
  }
}

}  // namespace bucklab
