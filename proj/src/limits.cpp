#include "qresum/limits.hpp"

#include <array>
#include <cstdio>

#include "parallel.hpp"

namespace qresum {

namespace {

QContext scan_context(Real q) { return QContext(q, kLimitMaxTerms); }

std::string fmt(const char* key, Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.6Lg", key, v);
  return buf;
}

std::string join(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ';';
    out += p;
  }
  return out;
}

template <class F>
std::vector<Complex> scan_values(const LimitSchedule& sched, int jobs, F&& at_q) {
  sched.validate();
  return detail::parallel_map(sched.q_values.size(), jobs,
                              [&](std::size_t i) { return at_q(i, sched.q_values[i]); });
}

void require_off_cut(Complex z, const char* what) {
  if (z == Complex{}) throw Error(ErrorKind::ZeroArgument, std::string(what) + ": z = 0");
  if (kPi - std::abs(std::arg(z)) <= 1e-12L) {
    throw Error(ErrorKind::BranchCut,
                std::string(what) + ": arg z = pi is on the principal branch cut");
  }
}

bool is_nonpositive_integer(Real v) {
  const Real r = std::round(v);
  return r <= 0.0L && std::abs(v - r) <= 1e-12L;
}

// Split of 1phi0(a;-;q,x) into even and odd parts over base q^2.
Complex linear_sum_rhs(Complex a, const QContext& ctx, Complex x) {
  const Complex q(ctx.q());
  const QContext ctx2 = ctx.with_q(ctx.q() * ctx.q());
  const Complex x2 = x * x;
  const std::array<Complex, 2> up_even{a, a * q};
  const std::array<Complex, 1> lo_even{q};
  const std::array<Complex, 2> up_odd{a * q, a * q * q};
  const std::array<Complex, 1> lo_odd{q * q * q};
  const Complex even = eval_unilateral_phi(up_even, lo_even, ctx2, x2).value;
  const Complex odd = eval_unilateral_phi(up_odd, lo_odd, ctx2, x2).value;
  // (a, q^3; q^2)_inf / (a q^2, q; q^2)_inf
  const std::array<Complex, 2> num{a, q * q * q};
  const std::array<Complex, 2> den{a * q * q, q};
  const Complex k =
      (qpoch_infinite_scaled(num, ctx2) / qpoch_infinite_scaled(den, ctx2)).value();
  return even + x * k * odd;
}

Complex phi10(Complex a, const QContext& ctx, Complex x) {
  const std::array<Complex, 1> up{a};
  return eval_unilateral_phi(up, {}, ctx, x).value;
}

}  // namespace

LimitSchedule LimitSchedule::powers_of_two(int k_lo, int k_hi) {
  LimitSchedule s;
  for (int k = k_lo; k <= k_hi; ++k) s.q_values.push_back(1.0L - std::ldexp(1.0L, -k));
  s.validate();
  return s;
}

void LimitSchedule::validate() const {
  if (q_values.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "schedule needs at least two q values");
  }
  for (std::size_t i = 0; i < q_values.size(); ++i) {
    const Real q = q_values[i];
    if (!(q > 0.0L && q < 1.0L)) {
      throw Error(ErrorKind::InvalidArgument, "schedule values must lie in (0,1)");
    }
    if (i > 0 && !(q > q_values[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "schedule must be strictly increasing");
    }
  }
}

bool LimitReport::passed(Real final_tol, Real extrapolated_tol, Real identity_tol) const {
  if (!monotone || !(final_error() < final_tol)) return false;
  if (has_extrapolation && !(extrapolated_error < extrapolated_tol)) return false;
  for (Real e : identity_errors) {
    if (!(e < identity_tol)) return false;
  }
  return classical_identity_error < identity_tol;
}

LimitReport make_limit_report(std::string name, std::string params, Complex target,
                              const LimitSchedule& sched, std::vector<Complex> values) {
  LimitReport r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.target = target;
  r.q_values = sched.q_values;
  r.values = std::move(values);
  r.monotone = true;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    const Real e = relative_error(r.values[i], target);
    if (!std::isfinite(e)) {
      throw Error(ErrorKind::Overflow, r.name + ": non-finite error in scan");
    }
    if (i > 0 && !(e < r.rel_errors.back() || e <= kLimitNoiseFloor)) r.monotone = false;
    r.rel_errors.push_back(e);
  }
  if (sched.extrapolation == Extrapolation::Richardson1 && r.values.size() >= 2) {
    const std::size_t n = r.values.size();
    const Real h1 = 1.0L - r.q_values[n - 2];
    const Real h2 = 1.0L - r.q_values[n - 1];
    r.extrapolated = (h1 * r.values[n - 1] - h2 * r.values[n - 2]) / (h1 - h2);
    r.extrapolated_error = relative_error(r.extrapolated, target);
    r.has_extrapolation = true;
  }
  return r;
}

LimitReport limit_theta_ratio(Real alpha, Real beta, Complex z, const LimitSchedule& sched,
                              ThetaLimitForm form, int jobs) {
  require_off_cut(z, "limit_theta_ratio");
  if (form == ThetaLimitForm::Ratio) {
    auto values = scan_values(sched, jobs, [&](std::size_t, Real q) {
      const QContext ctx = scan_context(q);
      return (theta_scaled(std::pow(q, beta) * z, ctx) /
              theta_scaled(std::pow(q, alpha) * z, ctx))
          .value();
    });
    return make_limit_report("theta-ratio", join({fmt("alpha", alpha), fmt("beta", beta),
                                                  "z=" + format_complex(z, 6)}),
                             principal_pow(z, Complex(alpha - beta)), sched, std::move(values));
  }
  auto values = scan_values(sched, jobs, [&](std::size_t, Real q) {
    const QContext ctx = scan_context(q);
    const Real h = 1.0L - q;
    ScaledComplex v = theta_scaled(std::pow(q, alpha) * z / h, ctx) /
                      theta_scaled(std::pow(q, beta) * z / h, ctx);
    v *= ScaledComplex::from_log(Complex((beta - alpha) * std::log(h)));
    return v.value();
  });
  return make_limit_report("theta-ratio-scaled", join({fmt("alpha", alpha), fmt("beta", beta),
                                                       "z=" + format_complex(z, 6)}),
                           principal_pow(z, Complex(beta - alpha)), sched, std::move(values));
}

LimitReport limit_qpoch_ratio(Real alpha, Complex z, const LimitSchedule& sched, int jobs) {
  if (!(std::abs(z) < 1.0L)) {
    throw Error(ErrorKind::DivergenceDomain, "limit_qpoch_ratio: needs |z| < 1");
  }
  auto values = scan_values(sched, jobs, [&](std::size_t, Real q) {
    const QContext ctx = scan_context(q);
    return (qpoch_infinite_scaled(z * std::pow(q, alpha), ctx) / qpoch_infinite_scaled(z, ctx))
        .value();
  });
  return make_limit_report("qpoch-ratio", join({fmt("alpha", alpha), "z=" + format_complex(z, 6)}),
                           principal_pow(Complex(1.0L) - z, Complex(-alpha)), sched,
                           std::move(values));
}

IdentityReport linear_sum_form_check(Complex a, const QContext& ctx, Complex x) {
  if (!(std::abs(x) < 1.0L)) {
    throw Error(ErrorKind::DivergenceDomain, "linear sum form: needs |x| < 1");
  }
  IdentityReport r;
  r.name = a == Complex{} ? "linear-sum-zero" : "linear-sum";
  r.tol = 1e-10L;
  r.add(format_params({{"a", a}, {"q", Complex(ctx.q())}, {"x", x}}), phi10(a, ctx, x),
        linear_sum_rhs(a, ctx, x));
  return r;
}

LimitReport limit_linear_sum(Real alpha, Complex x, const LimitSchedule& sched, int jobs) {
  if (!(std::abs(x) < 1.0L)) {
    throw Error(ErrorKind::DivergenceDomain, "limit_linear_sum: needs |x| < 1");
  }
  std::vector<Real> identity(sched.q_values.size());
  auto values = scan_values(sched, jobs, [&](std::size_t i, Real q) {
    const QContext ctx = scan_context(q);
    const Complex a(std::pow(q, alpha));
    const Complex rhs = linear_sum_rhs(a, ctx, x);
    identity[i] = relative_error(rhs, phi10(a, ctx, x));
    return rhs;
  });
  const Complex x2 = x * x;
  const std::array<Real, 3> p_even{alpha / 2.0L, alpha / 2.0L + 0.5L, 0.5L};
  const std::array<Real, 3> p_odd{alpha / 2.0L + 0.5L, alpha / 2.0L + 1.0L, 1.5L};
  const Complex target =
      classical_hypergeometric(HypergeometricKind::F21, p_even, x2).value +
      alpha * x * classical_hypergeometric(HypergeometricKind::F21, p_odd, x2).value;
  const std::array<Real, 1> p_binom{alpha};
  const Complex binomial = classical_hypergeometric(HypergeometricKind::F10, p_binom, x).value;
  LimitReport r = make_limit_report(
      "linear-sum", join({fmt("alpha", alpha), "x=" + format_complex(x, 6)}), target, sched,
      std::move(values));
  r.identity_errors = std::move(identity);
  r.classical_identity_error = relative_error(target, binomial);
  return r;
}

LimitReport limit_linear_sum_zero(Complex x, const LimitSchedule& sched, int jobs) {
  std::vector<Real> identity(sched.q_values.size());
  auto values = scan_values(sched, jobs, [&](std::size_t i, Real q) {
    const QContext ctx = scan_context(q);
    const Complex xs = (1.0L - q * q) * x;
    if (!(std::abs(xs) < 1.0L)) {
      throw Error(ErrorKind::DivergenceDomain, "limit_linear_sum_zero: |(1-q^2)x| >= 1");
    }
    const Complex rhs = linear_sum_rhs(Complex{}, ctx, xs);
    identity[i] = relative_error(rhs, phi10(Complex{}, ctx, xs));
    return rhs;
  });
  const Complex x2 = x * x;
  const std::array<Real, 1> half{0.5L};
  const std::array<Real, 1> three_halves{1.5L};
  const Complex target =
      classical_hypergeometric(HypergeometricKind::F01, half, x2).value +
      2.0L * x * classical_hypergeometric(HypergeometricKind::F01, three_halves, x2).value;
  const Complex exponential =
      classical_hypergeometric(HypergeometricKind::F00, {}, 2.0L * x).value;
  LimitReport r = make_limit_report("linear-sum-zero", "x=" + format_complex(x, 6), target,
                                    sched, std::move(values));
  r.identity_errors = std::move(identity);
  r.classical_identity_error = relative_error(target, exponential);
  return r;
}

LimitReport limit_theorem_A(Real beta, Complex x, const LaplaceConfig& cfg,
                            const LimitSchedule& sched, int jobs) {
  require_off_cut(x, "limit_theorem_A");
  if (is_nonpositive_integer(beta)) {
    throw Error(ErrorKind::Pole, "limit_theorem_A: Gamma(beta) has a pole");
  }
  auto values = scan_values(sched, jobs, [&](std::size_t, Real q) {
    const QContext ctx = scan_context(q);
    return closedform_psiA(Complex(std::pow(q, beta)), cfg, ctx, (1.0L - q) * x).value;
  });
  const Complex target = classical_gamma(Complex(beta)) *
                         principal_pow(x, Complex(1.0L - beta)) * std::exp(x);
  return make_limit_report("theorem-A", join({fmt("beta", beta), "x=" + format_complex(x, 6)}),
                           target, sched, std::move(values));
}

LimitReport limit_theorem_B(Real alpha, Complex x, const LaplaceConfig& cfg,
                            const LimitSchedule& sched, int jobs) {
  require_off_cut(x, "limit_theorem_B");
  if (is_nonpositive_integer(1.0L - alpha)) {
    throw Error(ErrorKind::Pole, "limit_theorem_B: Gamma(1-alpha) has a pole");
  }
  auto values = scan_values(sched, jobs, [&](std::size_t, Real q) {
    const QContext ctx = scan_context(q);
    return closedform_psiB(Complex(std::pow(q, alpha)), cfg, ctx, x / (1.0L - q)).value;
  });
  const Complex target = classical_gamma(Complex(1.0L - alpha)) *
                         principal_pow(x, Complex(-alpha)) * std::exp(Complex(1.0L) / x);
  return make_limit_report("theorem-B", join({fmt("alpha", alpha), "x=" + format_complex(x, 6)}),
                           target, sched, std::move(values));
}

}  // namespace qresum
