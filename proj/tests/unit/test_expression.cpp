#include <random>

#include "corpus.hpp"
#include "qresum/expression.hpp"
#include "test_util.hpp"

using namespace qresum;

TEST_CASE("grammar examples") {
  const Call t = parse("theta(q=0.5, z=1.2+0.3i)");
  CHECK(t.name == "theta");
  REQUIRE(t.args.size() == 2);
  CHECK(t.args[0].name == "q");
  CHECK(t.args[0].value.number() == Complex(0.5L));
  CHECK(t.args[1].name == "z");
  CHECK(t.args[1].value.number() == Complex(1.2L, 0.3L));

  const Call r = parse("resumA(q=0.5, b=0.2, lambda=1.1, x=0.3)");
  CHECK(r.name == "resumA");
  CHECK(r.find("lambda")->number() == Complex(1.1L));
  CHECK(r.find("window") == nullptr);

  try {
    parse("theta(q=0.5 z=1)");
    FAIL("expected SyntaxError");
  } catch (const ParseError& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(e.pos().line == 1);
    CHECK(e.pos().column == 13);
    CHECK(e.expected() == std::vector<std::string>{"','", "')'"});
    CHECK(e.found() == "identifier 'z'");
  }
}

TEST_CASE("complex literals") {
  CHECK(parse_complex_literal("2i") == Complex(0.0L, 2.0L));
  CHECK(parse_complex_literal("-0.4-1i") == Complex(-0.4L, -1.0L));
  CHECK(parse_complex_literal("1e-3+2E2i") == Complex(1e-3L, 200.0L));
  CHECK(parse_complex_literal(".5") == Complex(0.5L));
  // long double parsing keeps digits beyond double
  CHECK(parse_complex_literal("0.1").real() == 0.1L);
  CHECK_THROWS_AS(parse_complex_literal("1 + 2i"), ParseError);
  CHECK_THROWS_AS(parse_complex_literal("i"), ParseError);
  CHECK_THROWS_AS(parse_complex_literal(""), ParseError);
}

TEST_CASE("nested calls and validation context") {
  const Call c = parse("limit-scan(of=resumA(beta=0.5, x=1.2), kmax=8)");
  CHECK(c.name == "limit-scan");
  const Call& inner = c.find("of")->call();
  CHECK(inner.name == "resumA");
  CHECK(inner.find("beta")->number() == Complex(0.5L));
  // scan targets use their own parameter names
  CHECK_THROWS_AS(parse("limit-scan(of=resumA(q=0.5, b=0.2, x=1.2))"), ParseError);
  // syntax-only parsing accepts unknown names
  CHECK_NOTHROW(parse_expression("anything(p=1)"));
  CHECK_THROWS_AS(validate_expression(parse_expression("anything(p=1)")), ParseError);
}

TEST_CASE("function table") {
  const auto& names = function_names();
  for (const char* f : {"theta", "qpoch", "psi", "phi", "resumA", "resumB", "connA", "connB",
                        "gammaq", "eq", "limit-scan"}) {
    CHECK(std::find(names.begin(), names.end(), f) != names.end());
  }
}

TEST_CASE("parser corpus") {
  const auto cases = test::load_corpus(std::string(QRESUM_TEST_DATA) + "/parser_corpus.txt");
  CHECK(cases.size() == 50);
  for (const auto& c : cases) {
    CAPTURE(c.source_line);
    CAPTURE(c.text);
    const auto failure = test::check_case(c);
    CHECK_MESSAGE(!failure, failure.value_or(""));
  }
}

TEST_CASE("round trip on random numbers") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mag(-30.0, 30.0);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const Real re = static_cast<Real>(unit(rng)) * std::pow(10.0L, static_cast<Real>(mag(rng)));
    const Real im = i % 3 == 0 ? 0.0L : static_cast<Real>(unit(rng)) / 3.0L;
    std::string text = "theta(q=0.5, z=" + std::to_string(static_cast<double>(re)) + ")";
    Call c = parse(text);
    c.args[1].value.data = Complex(re, im);
    const Call back = parse(pretty_print(c));
    CHECK(back == c);
  }
}
