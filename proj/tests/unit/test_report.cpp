#include <doctest.h>

#include "bucklab/report.hpp"

using namespace bucklab;

TEST_SUITE("report") {
  TEST_CASE("checks decide the outcome") {
    Report r;
    r.title = "t";
    r.value("x", "1/2");
    CHECK(r.passed());
    r.check("fine", true);
    CHECK(r.passed());
    r.check("broken", false, "why");
    CHECK_FALSE(r.passed());
    REQUIRE(r.find_check("broken") != nullptr);
    CHECK(r.find_check("broken")->detail == "why");
    CHECK(r.find_value("missing") == nullptr);
    CHECK(*r.find_value("x") == "1/2");
  }

  TEST_CASE("append prefixes names") {
    Report a, b;
    b.value("v", "3");
    b.check("c", true);
    a.append(b, "sub: ");
    CHECK(*a.find_value("sub: v") == "3");
    CHECK(a.find_check("sub: c") != nullptr);
  }

  TEST_CASE("text rendering") {
    Report r;
    r.title = "title";
    r.value("k", "v");
    r.check("ok", true);
    r.check("bad", false, "detail");
    CHECK(format_text(r) == "title\n  k = v\n  [pass] ok\n  [FAIL] bad: detail\n  result: FAIL\n");
  }

  TEST_CASE("long values are elided in the middle on character boundaries") {
    Report r;
    std::string v;
    for (int i = 0; i < 100; ++i) v += "∪";  // three bytes each
    r.value("long", v);
    const std::string text = format_text(r, 20);
    CHECK(text.find(" ... ") != std::string::npos);
    CHECK(text.find("(300 chars)") != std::string::npos);
    const std::string head = text.substr(text.find("= ") + 2, text.find(" ... ") - text.find("= ") - 2);
    CHECK(head.size() % 3 == 0);
    CHECK(format_text(r, 0).find(v) != std::string::npos);
  }
}
