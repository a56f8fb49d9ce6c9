#include <array>

#include "qresum/qcore.hpp"
#include "test_util.hpp"

using namespace qresum;
using qresum::test::ref;
using qresum::test::rel;

TEST_CASE("finite q-shifted factorials") {
  const QContext ctx(0.5L);
  CHECK(qpoch_finite(0.3L, ctx, 0) == Complex(1.0L));
  CHECK(rel(qpoch_finite(0.5L, ctx, 2), 0.375L) < 1e-18L);
  CHECK(rel(qpoch_finite(0.25L, ctx, -1), 2.0L) < 1e-18L);
  // a = q: the n = -1 factor 1 - a/q vanishes
  CHECK_THROWS_AS(qpoch_finite(0.5L, ctx, -1), Error);
}

TEST_CASE("infinite q-shifted factorial") {
  const QContext ctx(0.5L);
  CHECK(qpoch_infinite(0.0L, ctx).value == Complex(1.0L));
  // mpmath qp(0.5, 0.5)
  CHECK(rel(qpoch_infinite(0.5L, ctx).value, ref("0.28878809508660242127889972192923078")) <
        1e-17L);

  const QContext c3(0.3L);
  const Complex lhs = qpoch_infinite(0.7L, c3).value;
  const Complex rhs = (1.0L - 0.7L) * qpoch_infinite(0.7L * 0.3L, c3).value;
  CHECK(rel(lhs, rhs) < 1e-16L);

  // scaled form stays in range where the plain product overflows
  const QContext c9(0.999L, 50000);
  const ScaledComplex big = qpoch_infinite_scaled(Complex(-50.0L), c9);
  CHECK(big.log_abs() > 1000.0L);
}

TEST_CASE("theta zeros, inversion, quasi-periodicity and triple product") {
  const QContext c5(0.5L);
  CHECK(std::abs(theta(-1.0L, c5).value) < 1e-15L);

  const QContext c4(0.4L);
  CHECK(rel(theta(2.0L, c4).value, theta(0.4L / 2.0L, c4).value) < 1e-12L);

  const QContext c3(0.3L);
  const Real z = 1.7L;
  const Real q = 0.3L;
  const Complex shifted = theta(z * q * q * q, c3).value;
  const Complex expected = std::pow(z, -3.0L) * std::pow(q, -3.0L) * theta(z, c3).value;
  CHECK(rel(shifted, expected) < 1e-12L);

  const QContext c35(0.35L);
  const Complex series = theta(1.3L, c35).value;
  CHECK(rel(series, theta_triple_product(1.3L, c35).value()) < 1e-12L);
  // mpmath, both the series and the product
  CHECK(rel(series, ref("3.2864967748787621972739296107011079")) < 1e-16L);

  const Complex zc(1.2L, 0.3L);
  CHECK(rel(theta(zc, c5).value, Complex(ref("3.5424515828586941383655013062492845"),
                                        ref("0.70939243872008114456747578950995525"))) < 1e-16L);
}

TEST_CASE("theta far from the unit circle keeps its prefactor in log form") {
  const QContext ctx(0.5L);
  const ScaledComplex t = theta_scaled(Complex(1e200L), ctx);
  CHECK(std::isfinite(t.log_abs()));
  CHECK_THROWS_AS(theta(Complex(0.0L), ctx), Error);
}

TEST_CASE("q-exponential") {
  const QContext ctx(0.5L);
  CHECK(q_exponential(0.0L, ctx).value == Complex(1.0L));
  const Complex e = q_exponential(0.6L, ctx).value;
  CHECK(rel(e, q_exponential_product(0.6L, ctx).value()) < 1e-12L);
  CHECK(rel(e, ref("2.7691282915028666921761215763853236")) < 1e-16L);

  Real prev = 1.0L;
  for (int k = 4; k <= 10; ++k) {
    const Real q = 1.0L - std::ldexp(1.0L, -k);
    const QContext c(q, 50000);
    const Real err = rel(q_exponential(0.8L * (1.0L - q), c).value, std::exp(0.8L));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 5e-2L);
}

TEST_CASE("q-gamma") {
  const QContext c4(0.4L);
  CHECK(rel(q_gamma(1.0L, c4).value, 1.0L) < 1e-16L);
  const Real z = 0.7L;
  const Complex ratio = q_gamma(z + 1.0L, c4).value / q_gamma(z, c4).value;
  CHECK(rel(ratio, (1.0L - std::pow(0.4L, z)) / (1.0L - 0.4L)) < 1e-12L);
  CHECK(rel(q_gamma(0.5L, c4).value, ref("1.5188160056600059575413423902065574")) < 1e-16L);
  CHECK_THROWS_AS(q_gamma(-2.0L, c4), Error);

  Real prev = 1.0L;
  for (int k = 4; k <= 10; ++k) {
    const QContext c(1.0L - std::ldexp(1.0L, -k), 50000);
    const Real err = rel(q_gamma(0.5L, c).value, std::sqrt(kPi));
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("classical gamma and hypergeometric references") {
  CHECK(rel(classical_gamma(1.0L), 1.0L) < 1e-15L);
  CHECK(rel(classical_gamma(5.0L), 24.0L) < 1e-15L);
  CHECK(rel(classical_gamma(0.5L), std::sqrt(kPi)) < 1e-15L);

  const std::array<Real, 1> one{1.0L};
  CHECK(rel(classical_hypergeometric(HypergeometricKind::F10, one, 0.5L).value, 2.0L) < 1e-15L);

  const Real x = 0.3L;
  const std::array<Real, 1> half{0.5L};
  const std::array<Real, 1> three_halves{1.5L};
  const Complex lin2 =
      classical_hypergeometric(HypergeometricKind::F01, half, x * x).value +
      2.0L * x * classical_hypergeometric(HypergeometricKind::F01, three_halves, x * x).value;
  CHECK(rel(lin2, std::exp(0.6L)) < 1e-14L);

  const Real al = 0.4L;
  const std::array<Real, 3> p1{al / 2, al / 2 + 0.5L, 0.5L};
  const std::array<Real, 3> p2{al / 2 + 0.5L, al / 2 + 1.0L, 1.5L};
  const Complex lin = classical_hypergeometric(HypergeometricKind::F21, p1, x * x).value +
                      al * x * classical_hypergeometric(HypergeometricKind::F21, p2, x * x).value;
  CHECK(rel(lin, std::pow(1.0L - x, -al)) < 1e-10L);

  CHECK_THROWS_AS(classical_hypergeometric(HypergeometricKind::F10, one, 1.5L), Error);
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(QContext(1.0L), Error);
  CHECK_THROWS_AS(QContext(0.0L), Error);
  CHECK_THROWS_AS(QContext(0.5L, 0), Error);
}
