#include "qresum/limits.hpp"
#include "test_util.hpp"

using namespace qresum;
using qresum::test::rel;

namespace {

const LimitSchedule kSched = LimitSchedule::powers_of_two();

void check_scan(const LimitReport& r, Complex expected_target) {
  CAPTURE(r.name);
  CAPTURE(r.params);
  CHECK(rel(r.target, expected_target) < 1e-14L);
  CHECK(r.monotone);
  CHECK(r.final_error() < 5e-2L);
  CHECK(r.has_extrapolation);
  CHECK(r.extrapolated_error < 1e-2L);
  CHECK(r.passed());
}

}  // namespace

TEST_CASE("schedule") {
  CHECK(kSched.q_values.size() == 7);
  CHECK(kSched.q_values.front() == 1.0L - 1.0L / 16);
  CHECK(kSched.q_values.back() == 1.0L - 1.0L / 1024);
  LimitSchedule bad;
  bad.q_values = {0.9L, 0.8L};
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.q_values = {0.9L};
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("theta ratio limits") {
  const LimitReport same = limit_theta_ratio(0.6L, 0.6L, 1.4L, kSched);
  for (Complex v : same.values) CHECK(rel(v, 1.0L) < 1e-15L);

  check_scan(limit_theta_ratio(1.0L, 0.3L, 1.5L, kSched), std::pow(1.5L, 0.7L));
  check_scan(limit_theta_ratio(0.4L, 1.2L, 0.8L, kSched, ThetaLimitForm::Scaled),
             std::pow(0.8L, 0.8L));
}

TEST_CASE("q-binomial ratio limits") {
  const LimitReport trivial = limit_qpoch_ratio(0.0L, 0.5L, kSched);
  for (Complex v : trivial.values) CHECK(rel(v, 1.0L) < 1e-15L);

  check_scan(limit_qpoch_ratio(1.0L, 0.5L, kSched), 2.0L);
  check_scan(limit_qpoch_ratio(0.7L, 0.3L, kSched), std::pow(0.7L, -0.7L));
}

TEST_CASE("linear sum forms") {
  const IdentityReport at_q = linear_sum_form_check(0.0L, QContext(0.6L), 0.4L);
  CHECK(at_q.passed());
  CHECK(at_q.max_err() < 1e-10L);

  const LimitReport zero = limit_linear_sum_zero(0.3L, kSched);
  check_scan(zero, std::exp(0.6L));
  CHECK(zero.classical_identity_error < 1e-12L);
  for (Real e : zero.identity_errors) CHECK(e < 1e-10L);

  const LimitReport lin = limit_linear_sum(0.4L, 0.3L, kSched);
  check_scan(lin, std::pow(0.7L, -0.4L));
  CHECK(lin.classical_identity_error < 1e-10L);
  for (Real e : lin.identity_errors) CHECK(e < 1e-10L);
}

TEST_CASE("resummation limits") {
  const LaplaceConfig cfg;
  check_scan(limit_theorem_A(1.0L, 0.8L, cfg, kSched), std::exp(0.8L));
  check_scan(limit_theorem_A(0.5L, 1.2L, cfg, kSched),
             std::sqrt(kPi) * std::sqrt(1.2L) * std::exp(1.2L));
  check_scan(limit_theorem_A(2.0L, 0.5L, cfg, kSched), 2.0L * std::exp(0.5L));

  check_scan(limit_theorem_B(0.0L, 2.0L, cfg, kSched), std::exp(0.5L));
  check_scan(limit_theorem_B(0.5L, 1.5L, cfg, kSched),
             std::sqrt(kPi) / std::sqrt(1.5L) * std::exp(2.0L / 3.0L));
  check_scan(limit_theorem_B(-1.0L, 2.0L, cfg, kSched), 2.0L * std::exp(0.5L));

  CHECK_THROWS_AS(limit_theorem_A(0.0L, 0.8L, cfg, kSched), Error);
  CHECK_THROWS_AS(limit_theorem_A(0.5L, -0.8L, cfg, kSched), Error);
}

TEST_CASE("parallel scans are identical to serial ones") {
  const LaplaceConfig cfg;
  const LimitReport s = limit_theorem_B(0.5L, 1.5L, cfg, kSched, 1);
  const LimitReport p = limit_theorem_B(0.5L, 1.5L, cfg, kSched, 4);
  REQUIRE(s.values.size() == p.values.size());
  for (std::size_t i = 0; i < s.values.size(); ++i) CHECK(s.values[i] == p.values[i]);
}

TEST_CASE("Richardson extrapolation improves the final error") {
  const LimitReport r = limit_qpoch_ratio(0.7L, 0.3L, kSched);
  CHECK(r.extrapolated_error * 5.0L < r.final_error());
}
