#include "bucklab/set_text.hpp"

#include <cctype>
#include <cstdint>
#include <vector>

#include "bucklab/errors.hpp"

namespace bucklab {
namespace {

using Value = EventuallyPeriodicSet::Value;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  EventuallyPeriodicSet parse() {
    EventuallyPeriodicSet acc = parse_part();
    skip_space();
    while (peek() == '+') {
      ++pos_;
      acc = unite(acc, parse_part());
      skip_space();
    }
    while (!at_end()) {
      const std::size_t at = pos_;
      const std::string word = parse_word();
      if (word == "except-add") {
        acc = unite(acc, EventuallyPeriodicSet::finite(parse_list()));
      } else if (word == "except-remove") {
        acc = difference(acc, EventuallyPeriodicSet::finite(parse_list()));
      } else {
        throw SyntaxError("expected 'except-add', 'except-remove' or end of input, found '" + word + "'", at);
      }
      skip_space();
    }
    return acc;
  }

 private:
  EventuallyPeriodicSet parse_part() {
    skip_space();
    if (peek() == '{') return EventuallyPeriodicSet::finite(parse_list());
    const std::size_t at = pos_;
    const std::string word = parse_word();
    if (word != "mod") throw SyntaxError("expected '{' or 'mod'", at);
    const std::size_t modulus_at = (skip_space(), pos_);
    const Value modulus = parse_int();
    if (modulus == 0) throw SyntaxError("modulus must be positive", modulus_at);
    skip_space();
    if (std::isalpha(static_cast<unsigned char>(peek()))) {
      const std::size_t kw = pos_;
      if (parse_word() != "residues") throw SyntaxError("expected 'residues' or '{'", kw);
    }
    skip_space();
    const std::size_t list_at = pos_;
    const std::vector<Value> residues = parse_list();
    for (Value r : residues) {
      if (r >= modulus) {
        throw SyntaxError("residue " + std::to_string(r) + " not below modulus " + std::to_string(modulus), list_at);
      }
    }
    Value from = 0;
    skip_space();
    const std::size_t save = pos_;
    if (std::isalpha(static_cast<unsigned char>(peek()))) {
      if (parse_word() == "from") {
        skip_space();
        from = parse_int();
      } else {
        pos_ = save;
      }
    }
    EventuallyPeriodicSet tail = EventuallyPeriodicSet::make(modulus, residues, 0, {});
    if (from > 0) tail = difference(tail, EventuallyPeriodicSet::interval(0, from - 1));
    return tail;
  }

  std::vector<Value> parse_list() {
    skip_space();
    expect('{');
    std::vector<Value> out;
    skip_space();
    if (peek() == '}') {
      ++pos_;
      return out;
    }
    while (true) {
      skip_space();
      const std::size_t at = pos_;
      const Value lo = parse_int();
      skip_space();
      if (text_.substr(pos_, 2) == "..") {
        pos_ += 2;
        skip_space();
        const Value hi = parse_int();
        if (hi < lo) throw SyntaxError("empty range", at);
        if (hi - lo > kMaxDenseSpan) throw SyntaxError("range too long", at);
        for (Value v = lo; v <= hi; ++v) out.push_back(v);
      } else {
        out.push_back(lo);
      }
      skip_space();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      return out;
    }
  }

  Value parse_int() {
    const std::size_t start = pos_;
    Value v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const Value d = static_cast<Value>(text_[pos_] - '0');
      if (v > (UINT64_MAX - d) / 10) throw SyntaxError("integer too large", start);
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ == start) throw SyntaxError("expected a non-negative integer", start);
    return v;
  }

  std::string parse_word() {
    skip_space();
    const std::size_t start = pos_;
    while (!at_end() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-')) ++pos_;
    if (pos_ == start) throw SyntaxError("expected a keyword", start);
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) throw SyntaxError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string render_list(const std::vector<Value>& values) {
  std::string out = "{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(values[i]);
  }
  return out + "}";
}

}  // namespace

EventuallyPeriodicSet parse_set(std::string_view text) { return Parser(text).parse(); }

std::string render_set(const EventuallyPeriodicSet& s) {
  if (s.residues().empty()) return render_list(s.exceptions());
  std::string periodic = "mod " + std::to_string(s.modulus()) + " " + render_list(s.residues()) + " from " +
                         std::to_string(s.threshold());
  if (s.exceptions().empty()) return periodic;
  return render_list(s.exceptions()) + " + " + periodic;
}

}  // namespace bucklab
