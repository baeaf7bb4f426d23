#include "bucklab/report.hpp"

#include <algorithm>

namespace bucklab {

void Report::append(const Report& other, const std::string& prefix) {
  for (const auto& [k, v] : other.values) values.emplace_back(prefix + k, v);
  for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.passed, c.detail});
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::string* Report::find_value(const std::string& key) const {
  for (const auto& [k, v] : values) {
    if (k == key) return &v;
  }
  return nullptr;
}

const Check* Report::find_check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

std::string elide(const std::string& v, std::size_t max_chars) {
  if (max_chars == 0 || v.size() <= max_chars) return v;
  // Cut on UTF-8 character boundaries.
  auto boundary = [&](std::size_t i) {
    while (i > 0 && i < v.size() && (static_cast<unsigned char>(v[i]) & 0xC0) == 0x80) --i;
    return i;
  };
  const std::size_t head = boundary(max_chars / 2);
  const std::size_t tail = boundary(v.size() - max_chars / 2);
  return v.substr(0, head) + " ... " + v.substr(tail) + " (" + std::to_string(v.size()) + " chars)";
}

}  // namespace

std::string format_text(const Report& report, std::size_t max_value_chars) {
  std::string out;
  if (!report.title.empty()) out += report.title + "\n";
  for (const auto& [k, v] : report.values) out += "  " + k + " = " + elide(v, max_value_chars) + "\n";
  for (const auto& c : report.checks) {
    out += std::string("  [") + (c.passed ? "pass" : "FAIL") + "] " + c.name;
    if (!c.detail.empty()) out += ": " + elide(c.detail, max_value_chars);
    out += "\n";
  }
  out += std::string("  result: ") + (report.passed() ? "pass" : "FAIL") + "\n";
  return out;
}

}  // namespace bucklab
