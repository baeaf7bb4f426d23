#include "alpha_text.hpp"

#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "bucklab/errors.hpp"

namespace bucklab::cli {

namespace {

bool is_rational_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  bool digits = false, slash = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else if (s[i] == '/' && !slash && digits) {
      slash = true;
      digits = false;
    } else {
      return false;
    }
  }
  return digits;
}

bool perfect_square(const Integer& v, Integer& root) {
  if (v < 0) return false;
  root = isqrt(v);
  return root * root == v;
}

IntervalReal from_digit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot read digit file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  std::string digits;
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (text.compare(i, 2, "0.") == 0) i += 2;
  else if (i < text.size() && text[i] == '.') i += 1;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) digits.push_back(c);
    else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw SyntaxError("unexpected character '" + std::string(1, c) + "' in digit file", i);
    }
  }
  if (digits.empty()) throw ContractViolation("digit file '" + path + "' holds no digits");
  auto shared = std::make_shared<const std::string>(std::move(digits));
  return IntervalReal::from_digits(
      10,
      [shared](std::size_t j) -> std::optional<unsigned> {
        if (j > shared->size()) return std::nullopt;
        return static_cast<unsigned>((*shared)[j - 1] - '0');
      },
      "digits:" + path);
}

}  // namespace

Alpha parse_alpha(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw SyntaxError("empty alpha", 0);
  if (s.rfind("digits:", 0) == 0) return from_digit_file(s.substr(7));
  if (is_rational_literal(s)) return Rational::parse(s);
  if (s.find('.') != std::string::npos) {
    throw ContractViolation("decimal alpha '" + s +
                            "' rejected; use p/q, sqrt(r), golden-conjugate or digits:<path>");
  }

  std::size_t pos = 0;
  Rational coefficient(1);
  const std::size_t star = s.find('*');
  if (star != std::string::npos) {
    const std::string c = s.substr(0, star);
    if (!is_rational_literal(c)) throw SyntaxError("expected a rational coefficient", 0);
    coefficient = Rational::parse(c);
    pos = star + 1;
  }

  IntervalReal base = IntervalReal::golden_conjugate();
  std::optional<Rational> exact;
  if (s.compare(pos, 16, "golden-conjugate") == 0) {
    pos += 16;
  } else if (s.compare(pos, 5, "sqrt(") == 0) {
    const std::size_t close = s.find(')', pos);
    if (close == std::string::npos) throw SyntaxError("missing ')'", s.size());
    const std::string arg = s.substr(pos + 5, close - pos - 5);
    if (!is_rational_literal(arg)) throw SyntaxError("expected a rational inside sqrt()", pos + 5);
    const Rational r = Rational::parse(arg);
    if (r.sign() < 0) throw ContractViolation("sqrt of a negative number");
    Integer pn, pd;
    if (perfect_square(r.numerator(), pn) && perfect_square(r.denominator(), pd)) exact = Rational(pn, pd);
    base = IntervalReal::sqrt_of(r);
    pos = close + 1;
  } else {
    throw SyntaxError("expected rational, sqrt(r), golden-conjugate or digits:<path>", pos);
  }

  Rational divisor(1);
  if (pos < s.size() && s[pos] == '/') {
    std::size_t end = pos + 1;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
    if (end == pos + 1) throw SyntaxError("expected an integer divisor", pos + 1);
    divisor = Rational::parse(s.substr(pos + 1, end - pos - 1));
    if (divisor == Rational(0)) throw ContractViolation("division by zero");
    pos = end;
  }
  Rational shift(0);
  if (pos < s.size()) {
    if (s[pos] != '+' && s[pos] != '-') throw SyntaxError("expected '+' or '-'", pos);
    const std::string rest = s.substr(pos + 1);
    if (!is_rational_literal(rest)) throw SyntaxError("expected a rational shift", pos + 1);
    shift = Rational::parse(rest);
    if (s[pos] == '-') shift = -shift;
  }
  const Rational scale = coefficient / divisor;
  if (exact) return *exact * scale + shift;
  if (scale == Rational(1) && shift == Rational(0)) return base;
  IntervalReal out = base.affine(scale, shift);
  return IntervalReal([out](std::size_t level) { return out.enclosure(level); }, s);
}

}  // namespace bucklab::cli
