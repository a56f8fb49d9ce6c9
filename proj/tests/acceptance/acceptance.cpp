// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "corpus.hpp"
#include "qresum/commands.hpp"
#include "qresum/limits.hpp"
#include "qresum/suites.hpp"

using namespace qresum;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int jobs() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::string sci(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2Le", v);
  return buf;
}

// Runs the suites with the given tolerance and requires at least
// min_points evaluated points in total.
Outcome suites(std::initializer_list<std::pair<const char*, std::optional<Real>>> list,
               std::size_t min_points = 1) {
  bool pass = true;
  std::string detail;
  std::size_t points = 0;
  for (const auto& [name, tol] : list) {
    SuiteOptions opts;
    opts.jobs = jobs();
    opts.tol = tol;
    for (const IdentityReport& r : run_suite(name, opts)) {
      points += r.points.size();
      std::size_t bad = 0;
      for (const auto& p : r.points) bad += p.pass ? 0 : 1;
      pass = pass && r.passed();
      if (!detail.empty()) detail += "; ";
      detail += r.name + " max_err " + sci(r.max_err()) + " tol " + sci(r.tol) + " (" +
                std::to_string(r.points.size() - bad) + "/" + std::to_string(r.points.size()) +
                ")";
    }
  }
  if (points < min_points) {
    pass = false;
    detail += "; only " + std::to_string(points) + " points, need " + std::to_string(min_points);
  }
  return {pass, detail};
}

Outcome limits() {
  const LimitSchedule sched = LimitSchedule::powers_of_two(4, 10);
  const LaplaceConfig cfg;
  const int j = jobs();
  std::vector<std::function<LimitReport()>> scans = {
      [&] { return limit_theta_ratio(1.0L, 0.3L, 1.5L, sched, ThetaLimitForm::Ratio, j); },
      [&] { return limit_theta_ratio(0.4L, 1.2L, 0.8L, sched, ThetaLimitForm::Scaled, j); },
      [&] { return limit_qpoch_ratio(0.7L, 0.3L, sched, j); },
      [&] { return limit_linear_sum(0.4L, 0.3L, sched, j); },
      [&] { return limit_linear_sum_zero(0.3L, sched, j); },
      [&] { return limit_theorem_A(1.0L, 0.8L, cfg, sched, j); },
      [&] { return limit_theorem_A(0.5L, 1.2L, cfg, sched, j); },
      [&] { return limit_theorem_A(2.0L, 0.5L, cfg, sched, j); },
      [&] { return limit_theorem_B(0.0L, 2.0L, cfg, sched, j); },
      [&] { return limit_theorem_B(0.5L, 1.5L, cfg, sched, j); },
      [&] { return limit_theorem_B(-1.0L, 2.0L, cfg, sched, j); },
  };
  bool pass = true;
  std::string detail;
  for (const auto& scan : scans) {
    const LimitReport r = scan();
    const bool ok = r.passed(5e-2L, 1e-2L, 1e-10L);
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += r.name + "[" + r.params + "] " + (r.monotone ? "monotone" : "NOT monotone") +
              " final " + sci(r.final_error()) + " richardson " + sci(r.extrapolated_error) +
              (ok ? "" : " FAIL");
  }
  return {pass, detail};
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qresum");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome parser() {
  const auto cases = test::load_corpus(std::string(QRESUM_TEST_DATA) + "/parser_corpus.txt");
  std::size_t ok = 0;
  std::string first_failure;
  for (const auto& c : cases) {
    const auto f = test::check_case(c);
    if (!f) {
      ++ok;
    } else if (first_failure.empty()) {
      first_failure = "line " + std::to_string(c.source_line) + ": " + *f;
    }
  }
  struct ExitCase {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<ExitCase> exits = {
      {{"eval", "theta(q=0.5, z=-1)"}, kExitPass},
      {{"verify", "ramanujan", "--grid", "default", "--tol", "1e-10"}, kExitPass},
      {{"scan", "limitA", "--beta", "0.5", "--x", "1.2"}, kExitPass},
      {{"verify", "psi01-closed-form", "--tol", "1e-30"}, kExitFailure},
      {{"scan", "limitA", "--beta", "0.5", "--x", "1.2", "--schedule", "q=0.3,0.5"}, kExitFailure},
      {{"eval", "eq(q=0.5, x=0.3, b=0.2)", "--tol", "1e-40"}, kExitFailure},
      {{"eval", "theta(q=0.5 z=1)"}, kExitUsage},
      {{"eval", "psi(q=0.5, a=0.8, b=0.2, z=1.5)"}, kExitUsage},
      {{"verify", "nonexistent"}, kExitUsage},
      {{"scan", "limitA", "--x", "1.2"}, kExitUsage},
  };
  std::size_t exit_ok = 0;
  for (const auto& e : exits) {
    if (cli(e.args) == e.code) {
      ++exit_ok;
    } else if (first_failure.empty()) {
      first_failure = "exit code of '" + e.args[0] + " " + e.args[1] + "'";
    }
  }
  const bool pass = cases.size() == 50 && ok == cases.size() && exit_ok == exits.size();
  std::string detail = "corpus " + std::to_string(ok) + "/" + std::to_string(cases.size()) +
                       " (round trip on every valid case), exit codes " + std::to_string(exit_ok) +
                       "/" + std::to_string(exits.size());
  if (!first_failure.empty()) detail += "; first failure: " + first_failure;
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"theta series vs triple product", [] { return suites({{"theta-duality", 1e-12L}}, 80); }},
      {"theta inversion and quasi-periodicity",
       [] { return suites({{"theta-functional", 1e-12L}}); }},
      {"Ramanujan 1psi1 sum", [] { return suites({{"ramanujan", 1e-10L}}, 100); }},
      {"0psi1 closed form", [] { return suites({{"psi01-closed-form", 1e-10L}}, 30); }},
      {"pipeline A vs closed form", [] { return suites({{"pipeline-A", 1e-8L}}); }},
      {"pipeline B vs closed form", [] { return suites({{"pipeline-B", 1e-8L}}); }},
      {"connection ellipticity and factorization", [] { return suites({{"connection", 1e-10L}}); }},
      {"lambda quasi-invariance", [] { return suites({{"lambda-shift", 1e-10L}}); }},
      {"Laplace of Borel on convergent 1phi0", [] { return suites({{"laplace-borel", 1e-10L}}); }},
      {"q-difference residuals and recurrences",
       [] { return suites({{"qdiff-residuals", 1e-10L}, {"recurrences", std::nullopt}}); }},
      {"Watson connection formula", [] { return suites({{"watson", 1e-8L}}, 5); }},
      {"linear sum forms at finite q", [] { return suites({{"linear-sum", 1e-10L}}); }},
      {"classical limits q -> 1", limits},
      {"parser corpus, round trip, exit codes", parser},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2zu %s: %s [%.1fs] %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
