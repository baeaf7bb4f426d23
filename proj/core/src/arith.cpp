#include "bucklab/arith.hpp"

#include <limits>
#include <ostream>
#include <sstream>

#include "bucklab/errors.hpp"

namespace bucklab {

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) {
    throw ContractViolation("rational with zero denominator");
  }
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ContractViolation("not an exact rational: '" + std::string(text) + "'");
  }
  Integer p(std::string(num), 10);
  Integer q(std::string(den), 10);
  if (negative) p = -p;
  return Rational(p, q);
}

Integer Rational::floor() const {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return r;
}

Integer Rational::ceil() const {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return r;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational& Rational::operator/=(const Rational& o) {
  if (o.value_ == 0) {
    throw ContractViolation("division by zero rational");
  }
  value_ /= o.value_;
  return *this;
}

std::string Rational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int digits) const {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // Round half away from zero: |x| * 10^d + 1/2, floored.
  const Rational scaled = abs() * Rational(scale) + Rational(1, 2);
  const Integer units = scaled.floor();
  Integer whole;
  Integer frac;
  mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), units.get_mpz_t(), scale.get_mpz_t());
  std::string out = (sign() < 0 && units != 0) ? "-" : "";
  out += whole.get_str();
  if (digits > 0) {
    std::string f = frac.get_str();
    out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Congruence crt_solve(std::span<const Congruence> congruences) {
  for (std::size_t i = 0; i < congruences.size(); ++i) {
    const auto& c = congruences[i];
    if (c.modulus <= 0) {
      throw ContractViolation("congruence " + std::to_string(i) + " has non-positive modulus");
    }
    if (c.residue < 0 || c.residue >= c.modulus) {
      throw ContractViolation("congruence " + std::to_string(i) + ": residue " + c.residue.get_str() +
                              " not reduced mod " + c.modulus.get_str());
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gcd(c.modulus, congruences[j].modulus) != 1) {
        throw ContractViolation("moduli not coprime: congruence " + std::to_string(j) + " (mod " +
                                congruences[j].modulus.get_str() + ") and congruence " +
                                std::to_string(i) + " (mod " + c.modulus.get_str() + ")");
      }
    }
  }

  Congruence acc{0, 1};
  for (const auto& c : congruences) {
    // acc.residue + acc.modulus * t == c.residue (mod c.modulus)
    Integer inv;
    mpz_invert(inv.get_mpz_t(), Integer(acc.modulus % c.modulus).get_mpz_t(), c.modulus.get_mpz_t());
    Integer t = ((c.residue - acc.residue) % c.modulus) * inv % c.modulus;
    if (t < 0) t += c.modulus;
    acc.residue += acc.modulus * t;
    acc.modulus *= c.modulus;
  }
  return acc;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw ContractViolation("isqrt of negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer pow2(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

std::uint64_t to_u64(const Integer& v) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
    throw CapacityExceeded("integer " + v.get_str() + " does not fit in 64 bits");
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw CapacityExceeded("64-bit overflow in " + std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

std::uint64_t checked_add_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw CapacityExceeded("64-bit overflow in " + std::to_string(a) + " + " + std::to_string(b));
  }
  return out;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul_u64(a / gcd_u64(a, b), b);
}

}  // namespace bucklab
