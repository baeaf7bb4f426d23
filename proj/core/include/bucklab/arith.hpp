#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <iosfwd>

#include <gmpxx.h>

namespace bucklab {

using Integer = mpz_class;

// Exact fraction in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T value) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T>) {
      value_ = static_cast<long>(value);
    } else {
      value_ = static_cast<unsigned long>(value);
    }
  }
  Rational(const Integer& value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& numerator, const Integer& denominator);

  // Accepts "p/q" or "p" with optional leading '-'.
  static Rational parse(std::string_view text);

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  Integer floor() const;
  Integer ceil() const;
  Rational abs() const;

  // Always "p/q", e.g. "7/1", "-1/3".
  std::string to_string() const;
  // Rounded decimal with `digits` fractional digits, computed exactly.
  std::string to_decimal(int digits = 12) const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.value_ = -a.value_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return value_; }

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

struct Congruence {
  Integer residue;
  Integer modulus;
};

// Chinese remaindering over pairwise coprime moduli. Returns (r, M) with
// M the product of the moduli and 0 <= r < M.
Congruence crt_solve(std::span<const Congruence> congruences);

Integer factorial(unsigned long n);
Integer isqrt(const Integer& n);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer pow2(unsigned long e);

std::uint64_t to_u64(const Integer& v);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
// Throws CapacityExceeded on overflow.
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add_u64(std::uint64_t a, std::uint64_t b);

}  // namespace bucklab
