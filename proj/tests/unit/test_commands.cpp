#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "qresum/commands.hpp"
#include "test_util.hpp"

using namespace qresum;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qresum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("command examples") {
  const Run r = run({"verify", "ramanujan", "--grid", "default", "--tol", "1e-10"});
  CHECK(r.code == kExitPass);
  const Report rep = parse_report_json(r.out);
  REQUIRE(rep.identities.size() == 1);
  CHECK(rep.identities[0].points.size() == 100);

  const Run s = run({"scan", "limitA", "--beta", "0.5", "--x", "1.2"});
  CHECK(s.code == kExitPass);
  const Report scan = parse_report_json(s.out);
  REQUIRE(scan.limits.size() == 1);
  CHECK(scan.limits[0].monotone);

  const Run e = run({"eval", "theta(q=0.5, z=-1)"});
  CHECK(e.code == kExitPass);
  const Report ev = parse_report_json(e.out);
  REQUIRE(ev.evaluations.size() == 1);
  CHECK(std::abs(ev.evaluations[0].value) < 1e-15L);
}

TEST_CASE("usage and domain errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"eval"}).code == kExitUsage);
  CHECK(run({"eval", "theta(q=0.5 z=1)"}).code == kExitUsage);
  CHECK(run({"eval", "thet(q=0.5, z=1)"}).code == kExitUsage);
  CHECK(run({"eval", "theta(q=1.5, z=1)"}).code == kExitUsage);
  CHECK(run({"eval", "theta(q=0.5+0.1i, z=1)"}).code == kExitUsage);
  CHECK(run({"eval", "psi(q=0.5, a=0.8, b=0.2, z=1.5)"}).code == kExitUsage);
  CHECK(run({"eval", "resumA(q=0.5, b=0.2, x=-1.1)"}).code == kExitUsage);
  CHECK(run({"eval", "qpoch(q=0.5, a=0.3, n=1.5)"}).code == kExitUsage);
  CHECK(run({"verify", "nonexistent"}).code == kExitUsage);
  CHECK(run({"verify", "ramanujan", "--grid", "sparse"}).code == kExitUsage);
  CHECK(run({"verify", "watson", "--grid", "random:5"}).code == kExitUsage);
  CHECK(run({"verify", "ramanujan", "--tol", "tiny"}).code == kExitUsage);
  CHECK(run({"verify", "ramanujan", "--jobs", "0"}).code == kExitUsage);
  CHECK(run({"verify", "ramanujan", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"scan", "limitA", "--x", "1.2"}).code == kExitUsage);
  CHECK(run({"scan", "limitZ", "--x", "1.2"}).code == kExitUsage);
  CHECK(run({"scan", "limitA", "--beta", "0.5", "--x", "1.2", "--schedule", "q=0.9,0.8"}).code ==
        kExitUsage);
  CHECK(run({"scan", "qpoch-ratio", "--alpha", "1", "--z", "0.5", "--lambda", "1.1"}).code ==
        kExitUsage);

  const Run e = run({"eval", "theta(q=0.5 z=1)"});
  CHECK(e.out.empty());
  CHECK(e.err.find("SyntaxError") != std::string::npos);
  CHECK(e.err.find("column 13") != std::string::npos);
}

TEST_CASE("injected failures exit with 1 exactly when an entry fails") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> exponent(8, 22);
  for (int trial = 0; trial < 8; ++trial) {
    const std::string tol = "1e-" + std::to_string(exponent(rng));
    const Run r = run({"verify", "psi01-closed-form", "--grid", "random:6:" + std::to_string(trial),
                       "--tol", tol});
    const Report rep = parse_report_json(r.out);
    bool all = true;
    for (const auto& p : rep.identities.at(0).points) all = all && p.rel_err < rep.identities[0].tol;
    CAPTURE(tol);
    CHECK(r.code == (all ? kExitPass : kExitFailure));
  }
  // a schedule too coarse for the 5e-2 final-error bound
  const Run s = run({"scan", "limitA", "--beta", "0.5", "--x", "1.2", "--schedule", "q=0.3,0.5"});
  CHECK(s.code == kExitFailure);
  // residual above a strict tolerance
  CHECK(run({"eval", "eq(q=0.5, x=0.3, b=0.2)", "--tol", "1e-40"}).code == kExitFailure);
  CHECK(run({"eval", "eq(q=0.5, x=0.3, b=0.2)"}).code == kExitPass);
  // an evaluation whose limit scan fails
  CHECK(run({"eval", "limit-scan(of=resumA(beta=0.5, x=1.2), kmin=1, kmax=2)"}).code ==
        kExitFailure);
}

TEST_CASE("reports do not depend on --jobs") {
  for (const char* suite : {"laplace-borel", "connection"}) {
    const Run a = run({"verify", suite, "--jobs", "1"});
    const Run b = run({"verify", suite, "--jobs", "4"});
    CHECK(a.code == kExitPass);
    CHECK(a.out == b.out);
  }
  const Run a = run({"scan", "limitB", "--alpha", "0.5", "--x", "1.5", "--jobs", "1"});
  const Run b = run({"scan", "limitB", "--alpha", "0.5", "--x", "1.5", "--jobs", "3"});
  CHECK(a.out == b.out);
}

TEST_CASE("output options") {
  const Run csv = run({"verify", "watson", "--format", "csv"});
  CHECK(csv.code == kExitPass);
  CHECK(csv.out.rfind("identity,", 0) == 0);

  const std::string path = "test_commands_out.json";
  const Run f = run({"eval", "gammaq(q=0.4, z=0.5)", "--out", path});
  CHECK(f.code == kExitPass);
  CHECK(f.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const Report rep = parse_report_json(text.str());
  CHECK(std::abs(rep.evaluations.at(0).value - Complex(1.5188160056600059576L)) < 1e-15L);
  std::remove(path.c_str());

  // the flag lambda applies when the expression gives none
  const Run l1 = run({"eval", "resumA(q=0.5, b=0.2, x=0.3)", "--lambda", "0.9"});
  const Run l2 = run({"eval", "resumA(q=0.5, b=0.2, x=0.3, lambda=0.9)"});
  CHECK(parse_report_json(l1.out).evaluations.at(0).value ==
        parse_report_json(l2.out).evaluations.at(0).value);

  // schedules
  CHECK(run({"scan", "qpoch-ratio", "--alpha", "0.7", "--z", "0.3", "--schedule", "k=4..8"}).code ==
        kExitPass);
  CHECK(run({"scan", "theta-scaled", "--alpha", "0.4", "--beta", "1.2", "--z", "0.8",
             "--schedule", "q=0.9,0.95,0.99,0.995"})
            .code == kExitPass);
  CHECK(run({"help"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitPass);
}
