#include <array>

#include "qresum/borel_laplace.hpp"
#include "test_util.hpp"

using namespace qresum;
using qresum::test::ref;
using qresum::test::rel;

namespace {

LaplaceConfig config(Complex lambda) {
  LaplaceConfig cfg;
  cfg.lambda = lambda;
  return cfg;
}

Complex poch(Complex a, const QContext& ctx) { return qpoch_infinite(a, ctx).value; }
Complex th(Complex z, const QContext& ctx) { return theta(z, ctx).value; }

// Theta by its defining series with no argument reduction.
Complex theta_unreduced(Complex w, Real q) {
  Complex s{};
  for (int m = -200; m <= 200; ++m) {
    const Real e = 0.5L * m * (m - 1);
    const Complex t = std::pow(q, e) * std::pow(w, static_cast<Real>(m));
    if (is_finite(t)) s += t;
  }
  return s;
}

}  // namespace

TEST_CASE("q-Borel transform on coefficient families") {
  const QContext ctx(0.5L);
  const FormalBilateralSeries ones({}, [](int) { return Complex(1.0L); }, 50);
  const FormalBilateralSeries b = qborel_plus(ones, ctx);
  for (int n = -6; n <= 6; ++n) {
    CHECK(rel(b.coeff(n), std::pow(0.5L, 0.5L * n * (n - 1))) < 1e-18L);
  }

  const auto a_series = FormalBilateralSeries::one_psi_one(0.0L, 0.2L, ctx);
  const auto a_borel = qborel_plus(a_series, ctx);
  CHECK(a_borel.descriptor().kind == SeriesKind::ZeroPsiOne);
  const auto zpo = FormalBilateralSeries::zero_psi_one(0.2L, ctx, -1.0L);
  for (int n = -8; n <= 8; ++n) CHECK(rel(a_borel.coeff(n), zpo.coeff(n)) < 1e-15L);

  const auto b_series = FormalBilateralSeries::one_psi_zero(0.6L, ctx);
  const auto b_borel = qborel_plus(b_series, ctx);
  CHECK(b_borel.descriptor().kind == SeriesKind::OnePsiOne);
  const auto opo = FormalBilateralSeries::one_psi_one(0.6L, 0.0L, ctx, -1.0L);
  for (int n = -8; n <= 8; ++n) CHECK(rel(b_borel.coeff(n), opo.coeff(n)) < 1e-15L);
}

TEST_CASE("Laplace of a Borel transform returns a convergent series") {
  const QContext ctx(0.5L);
  const auto f = FormalBilateralSeries::unilateral_phi({0.0L}, {}, ctx);
  const Complex x = 0.3L;
  CHECK(rel(resum(f, config(1.1L), ctx, x).value, 1.0L / poch(x, ctx)) < 1e-10L);
  for (Real lam : {0.9L, 1.7L}) {
    CHECK(rel(resum(f, config(lam), ctx, x).value, 1.0L / poch(x, ctx)) < 1e-10L);
  }
}

TEST_CASE("Jackson sum near the spiral and against direct summation") {
  const QContext ctx(0.5L);
  try {
    qlaplace_plus([](Complex) { return EvalResult{Complex(1.0L)}; }, config(1.1L), ctx, -1.1L);
    FAIL("expected SpiralProximity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SpiralProximity);
  }

  const Complex x = 0.3L;
  const Complex lam = 1.1L;
  const EvalResult r =
      qlaplace_plus([](Complex) { return EvalResult{Complex(1.0L)}; }, config(lam), ctx, x);
  Complex direct{};
  for (int n = -25; n <= 25; ++n) direct += 1.0L / theta_unreduced(lam * std::pow(0.5L, n) / x, 0.5L);
  CHECK(rel(r.materialize(), direct) < 1e-10L);
  CHECK(rel(r.materialize(), 1.0L) < 1e-10L);  // mpmath: the full sum equals 1
}

TEST_CASE("Borel-plane kernels match their closed forms") {
  const QContext ctx(0.5L);
  const Real q = 0.5L;
  const Complex xi = 0.7L;
  const Complex b = 0.2L;
  const Complex ka = kernel_psiA(b, ctx, xi).materialize();
  CHECK(rel(ka, poch(q, ctx) / poch(b, ctx) * th(xi, ctx) / th(q * xi / b, ctx) *
                    poch(-q * xi / b, ctx)) < 1e-10L);
  const Complex a = 0.6L;
  const Complex kb = kernel_psiB(a, ctx, xi).materialize();
  CHECK(rel(kb, poch(q, ctx) / poch(q / a, ctx) * th(a * xi, ctx) / th(xi, ctx) *
                    poch(-q / xi, ctx)) < 1e-10L);
  try {
    kernel_psiB(0.5L, ctx, xi);
    FAIL("expected ParameterPole");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParameterPole);
  }
}

TEST_CASE("resummation pipelines equal the closed forms") {
  const QContext ctx(0.5L);
  const Complex ca = closedform_psiA(0.2L, config(1.1L), ctx, 0.3L).materialize();
  CHECK(rel(ca, ref("4.2752262059850733245054767686648769")) < 1e-15L);  // mpmath
  CHECK(rel(resum_psiA(0.2L, config(1.1L), ctx, 0.3L).materialize(), ca) < 1e-8L);

  const Complex cb = closedform_psiB(0.6L, config(1.1L), ctx, 4.0L).materialize();
  CHECK(rel(cb, ref("6.5652691041367406264246033868036699")) < 1e-15L);  // mpmath
  CHECK(rel(resum_psiB(0.6L, config(1.1L), ctx, 4.0L).materialize(), cb) < 1e-8L);

  // the generic entry point dispatches on the descriptor
  const auto sa = FormalBilateralSeries::one_psi_one(0.0L, 0.2L, ctx);
  CHECK(rel(resum(sa, config(1.1L), ctx, 0.3L).materialize(), ca) < 1e-8L);
  const auto sb = FormalBilateralSeries::one_psi_zero(0.6L, ctx);
  CHECK(rel(resum(sb, config(1.1L), ctx, 4.0L).materialize(), cb) < 1e-8L);
}

TEST_CASE("closed forms are invariant under lambda -> q lambda") {
  const QContext ctx(0.5L);
  for (Complex lam : {Complex(1.1L), Complex(0.9L, 0.2L)}) {
    CHECK(rel(closedform_psiA(0.2L, config(0.5L * lam), ctx, 0.3L).materialize(),
              closedform_psiA(0.2L, config(lam), ctx, 0.3L).materialize()) < 1e-10L);
    CHECK(rel(closedform_psiB(0.6L, config(0.5L * lam), ctx, 4.0L).materialize(),
              closedform_psiB(0.6L, config(lam), ctx, 4.0L).materialize()) < 1e-10L);
  }
}

TEST_CASE("connection coefficients") {
  const QContext ctx(0.5L);
  const auto ca = connection_coeff(ConnectionVariant::A, 0.2L, config(1.1L), ctx);
  const Complex x = 0.37L;
  CHECK(std::abs(ca(0.5L * x) / ca(x) - 1.0L) < 1e-10L);
  CHECK(rel(closedform_psiA(0.2L, config(1.1L), ctx, x).materialize(), ca(x) * vtilde(0.2L, ctx, x)) <
        1e-10L);

  const auto cb = connection_coeff(ConnectionVariant::B, 0.6L, config(1.1L), ctx);
  const Complex y = 4.0L;
  CHECK(std::abs(cb(0.5L * y) / cb(y) - 1.0L) < 1e-10L);
  CHECK(rel(closedform_psiB(0.6L, config(1.1L), ctx, y).materialize(), cb(y) * vhat(0.6L, ctx, y)) <
        1e-10L);
}

TEST_CASE("closed form A is continuous through b = q") {
  const QContext ctx(0.5L);
  const Complex at_q = closedform_psiA(0.5L, config(1.1L), ctx, 0.3L).materialize();
  const Complex near = closedform_psiA(0.5L * (1.0L - 1e-9L), config(1.1L), ctx, 0.3L).materialize();
  CHECK(rel(near, at_q) < 1e-7L);
  // every quotient cancels at b = q, leaving 1phi0(0;-;q,x) = 1/(x;q)_inf
  CHECK(rel(at_q, 1.0L / poch(0.3L, ctx)) < 1e-12L);
}

TEST_CASE("configuration checks") {
  const QContext ctx(0.5L);
  CHECK_THROWS_AS(config(0.25L).validate(ctx), Error);
  LaplaceConfig big = config(1.1L);
  big.n_window = ctx.max_terms() + 1;
  CHECK_THROWS_AS(big.validate(ctx), Error);
  CHECK_NOTHROW(config(1.1L).validate(ctx));
}
