#include "qresum/borel_laplace.hpp"

#include <algorithm>
#include <string>

#include "summation.hpp"

namespace qresum {

namespace {

constexpr Real kEps = std::numeric_limits<Real>::epsilon();

ScaledComplex theta_with_err(Complex z, const QContext& ctx, Real& err) {
  Real e = 0.0L;
  ScaledComplex t = theta_scaled(z, ctx, &e);
  err += e;
  return t;
}

ScaledComplex poch(Complex a, const QContext& ctx) { return qpoch_infinite_scaled(a, ctx); }

void require_off_spiral(Complex x, Complex base, const QContext& ctx, Real guard,
                        const char* what) {
  if (x == Complex{}) throw Error(ErrorKind::ZeroArgument, std::string(what) + ": x = 0");
  if (QSpiral(base).distance(x, ctx) <= guard) {
    throw Error(ErrorKind::SpiralProximity, std::string(what) + ": x = " +
                                                format_complex(x, 10) + " lies on the spiral " +
                                                format_complex(base, 10) + "*q^Z");
  }
}

void require_nonzero_theta(Complex z, const QContext& ctx, Real guard, const char* what,
                           const char* label) {
  if (z == Complex{} || QSpiral(Complex(-1.0L)).distance(z, ctx) <= guard) {
    throw Error(ErrorKind::ParameterPole,
                std::string(what) + ": theta(" + label + ") vanishes");
  }
}

EvalResult from_scaled(const ScaledComplex& s, Real err) {
  EvalResult r;
  r.value = s.mantissa;
  r.log_scale = s.log_scale;
  r.err_estimate = err;
  return r;
}

EvalResult materialized(const ScaledComplex& s, Real err) {
  EvalResult r;
  r.value = s.value();
  r.err_estimate = err;
  return r;
}

}  // namespace

void LaplaceConfig::validate(const QContext& ctx) const {
  if (lambda == Complex{}) throw Error(ErrorKind::InvalidArgument, "lambda must be nonzero");
  if (!(spiral_guard > 0.0L)) {
    throw Error(ErrorKind::InvalidArgument, "spiral_guard must be positive");
  }
  if (n_window < 1 || n_window > ctx.max_terms()) {
    throw Error(ErrorKind::InvalidArgument,
                "n_window must lie in [1, max_terms], got " + std::to_string(n_window));
  }
  if (QSpiral(Complex(1.0L)).distance(lambda, ctx) <= spiral_guard) {
    throw Error(ErrorKind::InvalidArgument,
                "lambda = " + format_complex(lambda, 10) + " lies on q^Z");
  }
}

// ---------------------------------------------------------------------------
// Borel and Laplace
// ---------------------------------------------------------------------------

FormalBilateralSeries qborel_plus(const FormalBilateralSeries& s, const QContext& ctx) {
  const SeriesDescriptor& d = s.descriptor();
  SeriesDescriptor out;
  out.label = "B(" + d.describe() + ")";
  if (d.kind == SeriesKind::OnePsiOne && d.a == Complex{}) {
    out = SeriesDescriptor{SeriesKind::ZeroPsiOne, {}, d.b, -d.arg_scale, {}};
  } else if (d.kind == SeriesKind::OnePsiZero) {
    out = SeriesDescriptor{SeriesKind::OnePsiOne, d.a, {}, -d.arg_scale, {}};
  }
  const Real log_q = ctx.log_q();
  auto base = s.coefficient_fn();
  return FormalBilateralSeries(
      out,
      [base, log_q](int n) {
        const Real nr = static_cast<Real>(n);
        const Complex c = base(n);
        if (c == Complex{}) return c;
        return c * std::exp(0.5L * nr * (nr - 1.0L) * log_q);
      },
      s.window());
}

EvalResult qlaplace_plus(const Kernel& phi, const LaplaceConfig& cfg, const QContext& ctx,
                         Complex x) {
  cfg.validate(ctx);
  require_off_spiral(x, -cfg.lambda, ctx, cfg.spiral_guard, "qlaplace_plus");

  const Complex ratio = cfg.lambda / x;
  Real theta_err = 0.0L;
  const ScaledComplex th = theta_with_err(ratio, ctx, theta_err);
  const Complex log_ratio = std::log(ratio);
  const Real log_q = ctx.log_q();
  Real kernel_err = 0.0L;

  auto term = [&](int n) {
    const Real nr = static_cast<Real>(n);
    const EvalResult f = phi(cfg.lambda * std::exp(nr * log_q));
    kernel_err = std::max(kernel_err, f.err_estimate);
    if (f.value == Complex{}) return Complex{};
    ScaledComplex t = f.scaled();
    t *= ScaledComplex::from_log(nr * log_ratio + 0.5L * nr * (nr - 1.0L) * log_q);
    t /= th;
    if (t.log_abs() < -11000.0L) return Complex{};
    return t.value();
  };

  const detail::TailSum pos = detail::sum_tail_observed(
      ctx, term, cfg.n_window + 1, ErrorKind::TailNotConverged, "qlaplace_plus (n >= 0)");
  const detail::TailSum neg = detail::sum_tail_observed(
      ctx, [&](int m) { return term(-m - 1); }, cfg.n_window, ErrorKind::TailNotConverged,
      "qlaplace_plus (n < 0)");

  EvalResult r;
  r.value = check_finite(pos.sum + neg.sum, "qlaplace_plus");
  const Real scale = std::max({pos.scale, neg.scale, std::abs(r.value)});
  r.err_estimate = (pos.err_abs + neg.err_abs) / scale + kernel_err + theta_err;
  r.terms_pos = pos.terms;
  r.terms_neg = neg.terms;
  return r;
}

// ---------------------------------------------------------------------------
// Kernels
// ---------------------------------------------------------------------------

EvalResult kernel_psiA(Complex b, const QContext& ctx, Complex xi) {
  if (b == Complex{}) throw Error(ErrorKind::InvalidArgument, "psi_A: b must be nonzero");
  if (xi == Complex{}) throw Error(ErrorKind::ZeroArgument, "psi_A: xi = 0");
  if (detail::near_inverse_power(b, ctx, 0, ctx.max_terms(), kSpiralGuard).near) {
    throw Error(ErrorKind::ParameterPole, "psi_A: (b;q)_inf vanishes");
  }
  const Real r = std::abs(xi);
  if (r >= 2.0L * std::abs(b) && r <= 1e4L) {
    const std::array<Complex, 1> lower{b};
    return eval_bilateral_psi({}, lower, ctx, -xi);
  }
  const Complex w = ctx.q() * xi / b;
  Real err = 0.0L;
  ScaledComplex v = poch(Complex(ctx.q()), ctx) / poch(b, ctx);
  v *= theta_with_err(xi, ctx, err);
  v /= theta_with_err(w, ctx, err);
  v *= q_exponential_product(w, ctx);
  if (!is_finite(v.mantissa)) {
    throw Error(ErrorKind::ParameterPole, "psi_A: closed form has a pole at xi = " +
                                              format_complex(xi, 10));
  }
  return from_scaled(v, err + 16.0L * kEps);
}

EvalResult kernel_psiB(Complex a, const QContext& ctx, Complex xi) {
  if (a == Complex{}) throw Error(ErrorKind::InvalidArgument, "psi_B: a must be nonzero");
  if (xi == Complex{}) throw Error(ErrorKind::ZeroArgument, "psi_B: xi = 0");
  if (detail::near_inverse_power(ctx.q() / a, ctx, 0, ctx.max_terms(), kSpiralGuard).near) {
    throw Error(ErrorKind::ParameterPole, "psi_B: (q/a;q)_inf vanishes");
  }
  const Real r = std::abs(xi);
  if (r >= 1e-4L && r <= 0.5L) {
    const std::array<Complex, 1> upper{a};
    const std::array<Complex, 1> lower{Complex{}};
    return eval_bilateral_psi(upper, lower, ctx, -xi);
  }
  Real err = 0.0L;
  ScaledComplex v = poch(Complex(ctx.q()), ctx) / poch(ctx.q() / a, ctx);
  v *= theta_with_err(a * xi, ctx, err);
  v /= theta_with_err(xi, ctx, err);
  v *= q_exponential_product(ctx.q() / xi, ctx);
  if (!is_finite(v.mantissa)) {
    throw Error(ErrorKind::ParameterPole, "psi_B: closed form has a pole at xi = " +
                                              format_complex(xi, 10));
  }
  return from_scaled(v, err + 16.0L * kEps);
}

EvalResult resum(const FormalBilateralSeries& s, const LaplaceConfig& cfg, const QContext& ctx,
                 Complex x) {
  const FormalBilateralSeries borel = qborel_plus(s, ctx);
  const SeriesDescriptor& d = borel.descriptor();
  Kernel kernel;
  if (d.kind == SeriesKind::ZeroPsiOne) {
    kernel = [b = d.b, scale = d.arg_scale, &ctx](Complex xi) {
      return kernel_psiA(b, ctx, -scale * xi);
    };
  } else if (d.kind == SeriesKind::OnePsiOne && d.b == Complex{}) {
    kernel = [a = d.a, scale = d.arg_scale, &ctx](Complex xi) {
      return kernel_psiB(a, ctx, -scale * xi);
    };
  } else {
    kernel = [&borel, &ctx](Complex xi) { return evaluate_formal(borel, xi, ctx); };
  }
  return qlaplace_plus(kernel, cfg, ctx, x);
}

EvalResult resum_psiA(Complex b, const LaplaceConfig& cfg, const QContext& ctx, Complex x) {
  return qlaplace_plus([&](Complex xi) { return kernel_psiA(b, ctx, xi); }, cfg, ctx, x);
}

EvalResult resum_psiB(Complex a, const LaplaceConfig& cfg, const QContext& ctx, Complex x) {
  return qlaplace_plus([&](Complex xi) { return kernel_psiB(a, ctx, xi); }, cfg, ctx, x);
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

ScaledComplex phi10_zero(Complex y, const QContext& ctx) {
  if (detail::near_inverse_power(y, ctx, 0, ctx.max_terms(), kSpiralGuard).near) {
    throw Error(ErrorKind::SpiralProximity,
                "1phi0(0;-;q,y): y = " + format_complex(y, 10) + " is a pole (y in q^-N)");
  }
  return ScaledComplex(Complex(1.0L)) / poch(y, ctx);
}

ScaledComplex closedform_psiA_scaled(Complex b, const LaplaceConfig& cfg, const QContext& ctx,
                                     Complex x) {
  cfg.validate(ctx);
  require_off_spiral(x, -cfg.lambda, ctx, cfg.spiral_guard, "closedform_psiA");
  if (b == Complex{}) throw Error(ErrorKind::InvalidArgument, "closedform_psiA: b = 0");
  if (detail::near_inverse_power(b, ctx, 0, ctx.max_terms(), cfg.spiral_guard).near) {
    throw Error(ErrorKind::ParameterPole, "closedform_psiA: (b;q)_inf vanishes");
  }
  const Complex q(ctx.q());
  const Complex lam = cfg.lambda;
  require_nonzero_theta(q * lam / b, ctx, cfg.spiral_guard, "closedform_psiA", "q lambda/b");
  Real err = 0.0L;
  ScaledComplex v = poch(q, ctx) / poch(b, ctx);
  v *= theta_with_err(lam, ctx, err);
  v *= theta_with_err(lam * q / (b * x), ctx, err);
  v /= theta_with_err(q * lam / b, ctx, err);
  v /= theta_with_err(lam / x, ctx, err);
  v *= phi10_zero(x, ctx);
  return v;
}

EvalResult closedform_psiA(Complex b, const LaplaceConfig& cfg, const QContext& ctx, Complex x) {
  return materialized(closedform_psiA_scaled(b, cfg, ctx, x), 64.0L * kEps);
}

ScaledComplex closedform_psiB_scaled(Complex a, const LaplaceConfig& cfg, const QContext& ctx,
                                     Complex x) {
  cfg.validate(ctx);
  require_off_spiral(x, -cfg.lambda, ctx, cfg.spiral_guard, "closedform_psiB");
  if (a == Complex{}) throw Error(ErrorKind::InvalidArgument, "closedform_psiB: a = 0");
  const Complex q(ctx.q());
  // (q/a;q)_inf = 0 exactly when a lies in {q, q^2, ...}
  if (detail::near_inverse_power(q / a, ctx, 0, ctx.max_terms(), cfg.spiral_guard).near) {
    throw Error(ErrorKind::ParameterPole, "closedform_psiB: (q/a;q)_inf vanishes");
  }
  const Complex lam = cfg.lambda;
  require_nonzero_theta(lam, ctx, cfg.spiral_guard, "closedform_psiB", "lambda");
  Real err = 0.0L;
  ScaledComplex v = poch(q, ctx) / poch(q / a, ctx);
  v *= theta_with_err(a * lam, ctx, err);
  v *= theta_with_err(a * q * x / lam, ctx, err);
  v /= theta_with_err(lam, ctx, err);
  v /= theta_with_err(q * x / lam, ctx, err);
  v *= phi10_zero(Complex(1.0L) / (a * x), ctx);
  return v;
}

EvalResult closedform_psiB(Complex a, const LaplaceConfig& cfg, const QContext& ctx, Complex x) {
  return materialized(closedform_psiB_scaled(a, cfg, ctx, x), 64.0L * kEps);
}

// ---------------------------------------------------------------------------
// Connection
// ---------------------------------------------------------------------------

Complex vtilde(Complex b, const QContext& ctx, Complex x) {
  Real err = 0.0L;
  require_nonzero_theta(ctx.q() * x, ctx, kSpiralGuard, "vtilde", "qx");
  ScaledComplex v = theta_with_err(b * x, ctx, err) / theta_with_err(ctx.q() * x, ctx, err);
  v *= phi10_zero(x, ctx);
  return v.value();
}

Complex vhat(Complex a, const QContext& ctx, Complex x) {
  Real err = 0.0L;
  require_nonzero_theta(x, ctx, kSpiralGuard, "vhat", "x");
  ScaledComplex v = theta_with_err(a * x, ctx, err) / theta_with_err(x, ctx, err);
  v *= phi10_zero(Complex(1.0L) / (a * x), ctx);
  return v.value();
}

ConnectionCoefficient::ConnectionCoefficient(ConnectionVariant variant, Complex param,
                                             LaplaceConfig cfg, QContext ctx)
    : variant_(variant), param_(param), cfg_(cfg), ctx_(ctx) {
  cfg_.validate(ctx_);
  if (param_ == Complex{}) {
    throw Error(ErrorKind::InvalidArgument, "connection coefficient: parameter must be nonzero");
  }
}

Complex ConnectionCoefficient::evaluate(Complex x) const {
  const Complex q(ctx_.q());
  const Complex lam = cfg_.lambda;
  require_off_spiral(x, -lam, ctx_, cfg_.spiral_guard, "connection coefficient");
  Real err = 0.0L;
  ScaledComplex c;
  if (variant_ == ConnectionVariant::A) {
    const Complex b = param_;
    require_nonzero_theta(b * x, ctx_, cfg_.spiral_guard, "C_A", "bx");
    c = poch(q, ctx_) / poch(b, ctx_);
    c *= theta_with_err(lam, ctx_, err);
    c /= theta_with_err(q * lam / b, ctx_, err);
    c *= theta_with_err(b * x / lam, ctx_, err);
    c /= theta_with_err(q * x / lam, ctx_, err);
    c *= theta_with_err(q * x, ctx_, err);
    c /= theta_with_err(b * x, ctx_, err);
  } else {
    const Complex a = param_;
    require_nonzero_theta(a * x, ctx_, cfg_.spiral_guard, "C_B", "ax");
    c = poch(q, ctx_) / poch(q / a, ctx_);
    c *= theta_with_err(a * lam, ctx_, err);
    c /= theta_with_err(lam, ctx_, err);
    c *= theta_with_err(a * q * x / lam, ctx_, err);
    c /= theta_with_err(q * x / lam, ctx_, err);
    c *= theta_with_err(x, ctx_, err);
    c /= theta_with_err(a * x, ctx_, err);
  }
  if (!is_finite(c.mantissa)) {
    throw Error(ErrorKind::ParameterPole, "connection coefficient: pole at x = " +
                                              format_complex(x, 10));
  }
  return c.value();
}

ConnectionCoefficient connection_coeff(ConnectionVariant variant, Complex param,
                                       const LaplaceConfig& cfg, const QContext& ctx) {
  return ConnectionCoefficient(variant, param, cfg, ctx);
}

}  // namespace qresum
