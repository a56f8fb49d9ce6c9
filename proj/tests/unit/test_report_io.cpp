#include "qresum/report_io.hpp"
#include "qresum/suites.hpp"
#include "test_util.hpp"

using namespace qresum;

namespace {

Report sample_report() {
  Report r;
  r.command = "verify";
  r.subject = "sample";
  IdentityReport id;
  id.name = "sample-identity";
  id.tol = 1e-10L;
  id.add("q=0.5;z=1.2+0.3i", Complex(1.0L / 3.0L, -2.0L), Complex(1.0L / 3.0L, -2.0L));
  id.add("q=0.3;z=0.7", Complex(0.1L), Complex(0.1000001L));
  id.add_failure("q=0.7;z=2", "DivergenceDomain: outside the annulus");
  r.identities.push_back(id);

  LimitReport l = make_limit_report("sample-limit", "alpha=0.5", Complex(2.0L),
                                    LimitSchedule::powers_of_two(4, 6),
                                    {Complex(2.2L), Complex(2.1L), Complex(2.05L)});
  r.limits.push_back(l);

  Evaluation e;
  e.expression = "theta(q=0.5, z=-1)";
  e.value = Complex(1e-300L, 0.0L);
  e.log_scale = 12.5L;
  e.err_estimate = std::numeric_limits<Real>::infinity();
  e.terms_pos = 17;
  e.terms_neg = 3;
  e.note = "quote \" and, comma";
  r.evaluations.push_back(e);
  return r;
}

}  // namespace

TEST_CASE("JSON -> memory -> JSON is lossless") {
  const std::string j1 = to_json(sample_report());
  const Report back = parse_report_json(j1);
  CHECK(to_json(back) == j1);
  CHECK(parse_report_json(to_json(back)) == back);
  CHECK(back.schema == std::string(kReportSchema));
  CHECK(std::isinf(back.evaluations[0].err_estimate));
}

TEST_CASE("JSON round trip on suite output") {
  SuiteOptions opts;
  opts.samples = 10;
  Report r;
  r.command = "verify";
  r.subject = "ramanujan";
  r.identities = run_suite("ramanujan", opts);
  const std::string j1 = to_json(r);
  CHECK(to_json(parse_report_json(j1)) == j1);
}

TEST_CASE("JSON rejects other schemas and malformed text") {
  std::string j = to_json(sample_report());
  j.replace(j.find("qresum-report/1"), 15, "qresum-report/9");
  CHECK_THROWS_AS(parse_report_json(j), Error);
  CHECK_THROWS_AS(parse_report_json("{"), Error);
  CHECK_THROWS_AS(parse_report_json("{}"), Error);
}

TEST_CASE("pass flags") {
  const Report r = sample_report();
  CHECK_FALSE(r.identities[0].passed());
  CHECK_FALSE(r.passed());
  Report ok;
  ok.evaluations.push_back(Evaluation{});
  CHECK(ok.passed());
}

TEST_CASE("CSV columns are fixed per kind") {
  const std::string csv = to_csv(sample_report());
  std::vector<std::string> lines;
  std::stringstream in(csv);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() >= 12);
  CHECK(lines[0] == "identity,q,z,lhs,rhs,rel_err,pass");
  CHECK(lines[1].rfind("sample-identity,0.5,1.2+0.3i,", 0) == 0);
  CHECK(lines[1].substr(lines[1].size() - 4) == "true");
  CHECK(lines[3] == "sample-identity,0.7,2,,,,false");
  CHECK(lines[4].empty());
  CHECK(lines[5] == "limit,params,q,value,target,rel_err,identity_err,pass");
  CHECK(lines[6].rfind("sample-limit,alpha=0.5,0.9375,", 0) == 0);
  CHECK(lines[9].rfind("sample-limit,alpha=0.5,extrapolated,", 0) == 0);
  CHECK(lines[10].empty());
  CHECK(lines[11] == "expression,value,log_scale,err_estimate,terms_pos,terms_neg,pass");
  CHECK(lines[12].rfind("\"theta(q=0.5, z=-1)\",", 0) == 0);
}
