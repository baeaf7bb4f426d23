#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace bucklab {

// Fixed-size packed bit vector with the few word-level operations the set
// algebra needs (shifted OR for sumsets, population count, set-bit scans).
class Bitmap {
 public:
  Bitmap() = default;
  explicit Bitmap(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

  std::size_t count() const;
  bool none() const;
  // Lowest set index >= from, or size() if none.
  std::size_t find_next(std::size_t from) const;

  // this |= (other << shift), truncated to size().
  void or_shifted(const Bitmap& other, std::size_t shift);
  Bitmap& operator|=(const Bitmap& other);

  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const std::size_t i = (w << 6) + static_cast<std::size_t>(__builtin_ctzll(bits));
        if (i >= size_) return;
        fn(i);
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const Bitmap& a, const Bitmap& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  void clear_tail();

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace bucklab
