#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace bucklab {

// One asserted fact inside a report.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Outcome of a verification routine: named exact values (rationals as "p/q",
// integers in decimal) plus pass/fail checks, both in insertion order.
struct Report {
  std::string title;
  std::vector<std::pair<std::string, std::string>> values;
  std::vector<Check> checks;

  void value(std::string key, std::string v) { values.emplace_back(std::move(key), std::move(v)); }
  void check(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }
  void append(const Report& other, const std::string& prefix = {});

  bool passed() const;
  const std::string* find_value(const std::string& key) const;
  const Check* find_check(const std::string& name) const;
};

// Human-readable rendering. Values longer than `max_value_chars` are elided
// in the middle (0 keeps everything); the structured output never elides.
std::string format_text(const Report& report, std::size_t max_value_chars = 160);

}  // namespace bucklab
