#include "qresum/qcore.hpp"

#include <array>
#include <string>
#include <vector>

#include "summation.hpp"

namespace qresum {

namespace {

constexpr Real kHugeMantissa = 1e1000L;
constexpr Real kTinyMantissa = 1e-1000L;

struct ProductOutcome {
  ScaledComplex value;
  Real rel_err = 0.0L;
  int factors = 0;
};

ProductOutcome product_to_infinity(Complex a, const QContext& ctx) {
  ProductOutcome out;
  if (a == Complex{}) return out;
  const Real q = ctx.q();
  const Real tol = ctx.tail_tol();
  Complex term = a;  // a q^k
  Complex m{1.0L, 0.0L};
  Real log_scale = 0.0L;
  int small_run = 0;
  for (int k = 0; k < ctx.max_terms(); ++k) {
    const Complex factor = Complex(1.0L) - term;
    if (detail::is_vanishing_factor(factor)) {
      out.value = ScaledComplex(Complex{});
      out.factors = k + 1;
      return out;
    }
    m *= factor;
    const Real mag = std::abs(m);
    if (mag > kHugeMantissa || mag < kTinyMantissa) {
      ScaledComplex s(m, log_scale);
      m = s.mantissa;
      log_scale = s.log_scale;
    }
    term *= q;
    const Real next = std::abs(term);
    small_run = next <= tol ? small_run + 1 : 0;
    const Real tail = next / (1.0L - q);
    if (small_run >= ctx.consecutive_small() && tail <= tol) {
      // |log prod_{j>=K} (1 - a q^j)| <= tail / (1 - |a q^K|)
      out.rel_err = std::expm1(tail / (1.0L - next));
      out.factors = k + 1;
      out.value = ScaledComplex(m, log_scale);
      return out;
    }
  }
  throw Error(ErrorKind::MaxTermsExceeded,
              "qpoch_infinite: product not converged within " +
                  std::to_string(ctx.max_terms()) + " factors");
}

// Integer-valued test with a small absolute slack.
bool is_nonpositive_integer(Complex z) {
  if (std::abs(z.imag()) > 1e-12L) return false;
  const Real r = std::round(z.real());
  return r <= 0.0L && std::abs(z.real() - r) <= 1e-12L;
}

}  // namespace

Complex qpoch_finite(Complex a, const QContext& ctx, int n) {
  const Real q = ctx.q();
  Complex p{1.0L, 0.0L};
  if (n >= 0) {
    Complex term = a;
    for (int k = 0; k < n; ++k) {
      p *= Complex(1.0L) - term;
      term *= q;
    }
    return check_finite(p, "qpoch_finite");
  }
  const Real inv_q = 1.0L / q;
  Complex term = a * inv_q;
  for (int k = 1; k <= -n; ++k) {
    const Complex factor = Complex(1.0L) - term;
    if (factor == Complex{}) {
      throw Error(ErrorKind::DivisionByZero,
                  "qpoch_finite: factor 1 - a q^-" + std::to_string(k) + " vanishes");
    }
    p *= factor;
    term *= inv_q;
  }
  return check_finite(Complex(1.0L) / p, "qpoch_finite");
}

EvalResult qpoch_infinite(Complex a, const QContext& ctx) {
  const ProductOutcome prod = product_to_infinity(a, ctx);
  EvalResult r;
  r.value = prod.value.value();
  r.err_estimate = prod.rel_err;
  r.terms_pos = prod.factors;
  return r;
}

ScaledComplex qpoch_infinite_scaled(Complex a, const QContext& ctx) {
  return product_to_infinity(a, ctx).value;
}

ScaledComplex qpoch_infinite_scaled(std::span<const Complex> as, const QContext& ctx) {
  ScaledComplex out;
  for (const Complex& a : as) out *= product_to_infinity(a, ctx).value;
  return out;
}

ScaledComplex theta_scaled(Complex z, const QContext& ctx, Real* err) {
  if (z == Complex{}) {
    throw Error(ErrorKind::ZeroArgument, "theta: argument must be nonzero");
  }
  const Real q = ctx.q();
  const Real log_q = ctx.log_q();
  // k with sqrt(q) <= |z q^{-k}| < 1/sqrt(q)
  const Real t = std::log(std::abs(z)) / log_q;
  if (!std::isfinite(t) || std::abs(t) > 1e9L) {
    throw Error(ErrorKind::Overflow, "theta: argument reduction out of range");
  }
  const long long k = static_cast<long long>(std::ceil(t - 0.5L));
  const Real kr = static_cast<Real>(k);
  const Complex zr = k == 0 ? z : z * std::exp(-kr * log_q);

  const Real abs_zr = std::abs(zr);
  const detail::TailSum pos = detail::sum_tail(
      ctx, Complex(1.0L),
      [&](int n, Complex tn) {
        const Real qn = std::pow(q, static_cast<Real>(n));
        return detail::Step{tn * qn * zr, qn * q * abs_zr};
      },
      ctx.max_terms(), "theta");
  const detail::TailSum neg = detail::sum_tail(
      ctx, q / zr,
      [&](int m, Complex tm) {
        // t_{-(m+1)} -> t_{-(m+2)} has ratio q^{m+2} / z
        const Real qm = std::pow(q, static_cast<Real>(m + 2));
        return detail::Step{tm * qm / zr, qm * q / abs_zr};
      },
      ctx.max_terms(), "theta");

  const Complex reduced = pos.sum + neg.sum;
  if (err != nullptr) {
    const Real scale = std::max({std::abs(reduced), pos.scale, neg.scale});
    *err = (pos.err_abs + neg.err_abs) / scale;
  }
  ScaledComplex out(reduced);
  if (k != 0) {
    // theta(zr q^k) = zr^{-k} q^{-k(k-1)/2} theta(zr)
    const Complex log_prefactor =
        -kr * std::log(zr) - 0.5L * kr * (kr - 1.0L) * log_q;
    out *= ScaledComplex::from_log(log_prefactor);
  }
  return out;
}

EvalResult theta(Complex z, const QContext& ctx) {
  Real err = 0.0L;
  const ScaledComplex s = theta_scaled(z, ctx, &err);
  EvalResult r;
  r.value = s.value();
  r.err_estimate = err;
  return r;
}

ScaledComplex theta_triple_product(Complex z, const QContext& ctx) {
  if (z == Complex{}) {
    throw Error(ErrorKind::ZeroArgument, "theta_triple_product: argument must be nonzero");
  }
  const std::array<Complex, 3> args{Complex(ctx.q()), -z, -ctx.q() / z};
  return qpoch_infinite_scaled(args, ctx);
}

EvalResult q_exponential(Complex z, const QContext& ctx) {
  const Real q = ctx.q();
  const Real abs_z = std::abs(z);
  const detail::TailSum s = detail::sum_tail(
      ctx, Complex(1.0L),
      [&](int n, Complex tn) {
        const Real qn = std::pow(q, static_cast<Real>(n));
        const Complex next = tn * qn * z / (1.0L - qn * q);
        // q^m |z| / (1 - q^{m+1}) decreases in m
        const Real qm = qn * q;
        return detail::Step{next, qm * abs_z / (1.0L - qm * q)};
      },
      ctx.max_terms(), "q_exponential");
  EvalResult r;
  r.value = s.sum;
  r.err_estimate = s.scale == 0.0L ? 0.0L : s.err_abs / s.scale;
  r.terms_pos = s.terms;
  return r;
}

ScaledComplex q_exponential_product(Complex z, const QContext& ctx) {
  return qpoch_infinite_scaled(-z, ctx);
}

EvalResult q_gamma(Complex z, const QContext& ctx) {
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorKind::Pole, "q_gamma: pole at a nonpositive integer");
  }
  const ProductOutcome num = product_to_infinity(Complex(ctx.q()), ctx);
  const ProductOutcome den = product_to_infinity(std::exp(z * ctx.log_q()), ctx);
  if (den.value.is_zero()) {
    throw Error(ErrorKind::Pole, "q_gamma: (q^z;q)_inf vanishes");
  }
  ScaledComplex v = num.value / den.value;
  v *= ScaledComplex::from_log((Complex(1.0L) - z) * std::log(1.0L - ctx.q()));
  EvalResult r;
  r.value = v.value();
  r.err_estimate = num.rel_err + den.rel_err;
  r.terms_pos = num.factors + den.factors;
  return r;
}

Complex classical_gamma(Complex z) {
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorKind::Pole, "classical_gamma: pole at a nonpositive integer");
  }
  if (z.real() < 0.5L) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return kPi / (std::sin(kPi * z) * classical_gamma(Complex(1.0L) - z));
  }
  // Lanczos, g = 7, n = 9
  static constexpr std::array<Real, 9> kCoeff = {
      0.99999999999980993227684700473478L,  676.520368121885098567009190444019L,
      -1259.13921672240287047156078755283L, 771.3234287776530788486528258894L,
      -176.61502916214059906584551354L,     12.507343278686904814458936853L,
      -0.13857109526572011689554707L,       9.984369578019570859563e-6L,
      1.50563273514931155834e-7L,
  };
  constexpr Real g = 7.0L;
  const Complex w = z - Complex(1.0L);
  Complex acc(kCoeff[0]);
  for (std::size_t i = 1; i < kCoeff.size(); ++i) {
    acc += kCoeff[i] / (w + static_cast<Real>(i));
  }
  const Complex t = w + g + 0.5L;
  const Real sqrt_two_pi = std::sqrt(2.0L * kPi);
  return check_finite(sqrt_two_pi * std::exp((w + 0.5L) * std::log(t) - t) * acc,
                      "classical_gamma");
}

EvalResult classical_hypergeometric(HypergeometricKind kind, std::span<const Real> params,
                                    Complex z) {
  std::size_t expected = 0;
  bool needs_disk = false;
  switch (kind) {
    case HypergeometricKind::F00: expected = 0; break;
    case HypergeometricKind::F01: expected = 1; break;
    case HypergeometricKind::F10: expected = 1; needs_disk = true; break;
    case HypergeometricKind::F21: expected = 3; needs_disk = true; break;
  }
  if (params.size() != expected) {
    throw Error(ErrorKind::InvalidArgument,
                "classical_hypergeometric: expected " + std::to_string(expected) +
                    " parameters, got " + std::to_string(params.size()));
  }
  if (needs_disk && std::abs(z) >= 1.0L) {
    throw Error(ErrorKind::DivergenceDomain, "classical_hypergeometric: requires |z| < 1");
  }
  std::vector<Real> upper;
  std::vector<Real> lower;
  switch (kind) {
    case HypergeometricKind::F00: break;
    case HypergeometricKind::F01: lower = {params[0]}; break;
    case HypergeometricKind::F10: upper = {params[0]}; break;
    case HypergeometricKind::F21: upper = {params[0], params[1]}; lower = {params[2]}; break;
  }
  for (Real c : lower) {
    if (is_nonpositive_integer(Complex(c))) {
      throw Error(ErrorKind::Pole, "classical_hypergeometric: lower parameter is a pole");
    }
  }
  Real upper_abs = 0.0L;
  Real upper_prod = 1.0L;
  for (Real a : upper) {
    upper_abs += std::abs(a);
    upper_prod *= std::abs(a);
  }
  const Real lower_abs = lower.empty() ? 0.0L : std::abs(lower[0]);
  const Real abs_z = std::abs(z);
  constexpr Real inf = std::numeric_limits<Real>::infinity();

  // Ratio bound valid for every index after m (see comments per kind).
  auto ratio_bound = [&](Real m) -> Real {
    switch (kind) {
      case HypergeometricKind::F00:
        return abs_z / (m + 1.0L);
      case HypergeometricKind::F01:
        return m > lower_abs ? abs_z / ((m + 1.0L) * (m - lower_abs)) : inf;
      case HypergeometricKind::F10:
        return abs_z * std::max((upper_abs + m) / (m + 1.0L), 1.0L);
      case HypergeometricKind::F21: {
        if (m <= lower_abs) return inf;
        // (A+m)(B+m)/((m+1)(m-C)) <= 1 + ((A+B+C) m + AB + C)/((m+1)(m-C)),
        // and the right side decreases for m > C.
        const Real excess = ((upper_abs + lower_abs) * m + upper_prod + lower_abs) /
                            ((m + 1.0L) * (m - lower_abs));
        return abs_z * (1.0L + excess);
      }
    }
    return inf;
  };

  const QContext policy(0.5L, 1000000, 1e-18L, 5);
  const detail::TailSum s = detail::sum_tail(
      policy, Complex(1.0L),
      [&](int n, Complex tn) {
        const Real nr = static_cast<Real>(n);
        Complex next = tn * z / (nr + 1.0L);
        for (Real a : upper) next *= (a + nr);
        for (Real c : lower) next /= (c + nr);
        if (next == Complex{}) return detail::Step{next, 0.0L};
        return detail::Step{next, ratio_bound(nr + 1.0L)};
      },
      policy.max_terms(), "classical_hypergeometric");
  EvalResult r;
  r.value = s.sum;
  r.err_estimate = s.scale == 0.0L ? 0.0L : s.err_abs / s.scale;
  r.terms_pos = s.terms;
  return r;
}

}  // namespace qresum
