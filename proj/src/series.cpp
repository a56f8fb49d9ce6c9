#include "qresum/series.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "summation.hpp"

namespace qresum {

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

std::string describe_param(const char* role, Complex v) {
  return std::string(role) + "=" + format_complex(v, 8);
}

long long max_index(const QContext& ctx) { return ctx.max_terms(); }

std::size_t count_zero(std::span<const Complex> ps) {
  return static_cast<std::size_t>(
      std::count_if(ps.begin(), ps.end(), [](Complex v) { return v == Complex{}; }));
}

bool positive_tail_terminates(std::span<const Complex> upper, const QContext& ctx) {
  // (a;q)_n = 0 for large n iff a = q^{-k}, k >= 0
  return std::any_of(upper.begin(), upper.end(), [&](Complex a) {
    return detail::near_inverse_power(a, ctx, 0, max_index(ctx), kSpiralGuard).exact;
  });
}

bool negative_tail_terminates(std::span<const Complex> lower, const QContext& ctx) {
  // 1/(b;q)_{-m} = prod_{k<=m} (1 - b q^{-k}) vanishes iff b = q^k, k >= 1
  return std::any_of(lower.begin(), lower.end(), [&](Complex b) {
    return detail::near_inverse_power(b, ctx, -max_index(ctx), -1, kSpiralGuard).exact;
  });
}

}  // namespace

// ---------------------------------------------------------------------------
// QSpiral, ConvergenceDomain
// ---------------------------------------------------------------------------

QSpiral::QSpiral(Complex b) : base(b) {
  if (b == Complex{}) throw Error(ErrorKind::InvalidArgument, "QSpiral: base must be nonzero");
}

long long QSpiral::nearest_index(Complex x, const QContext& ctx) const {
  if (x == Complex{}) throw Error(ErrorKind::ZeroArgument, "QSpiral: zero point");
  return std::llround(std::log(std::abs(x) / std::abs(base)) / ctx.log_q());
}

Real QSpiral::distance(Complex x, const QContext& ctx) const {
  const long long k0 = nearest_index(x, ctx);
  Real best = kInf;
  for (long long k = k0 - 1; k <= k0 + 1; ++k) {
    const Complex point = base * std::pow(ctx.q(), static_cast<Real>(k));
    best = std::min(best, std::abs(x - point) / std::abs(x));
  }
  return best;
}

ConvergenceDomain ConvergenceDomain::disk(Real r) {
  ConvergenceDomain d;
  d.kind = DomainKind::Disk;
  d.r_in = 0.0L;
  d.r_out = r;
  return d;
}

ConvergenceDomain ConvergenceDomain::annulus(Real r_in, Real r_out) {
  if (!(r_in < r_out)) return empty();
  ConvergenceDomain d;
  d.kind = DomainKind::Annulus;
  d.r_in = r_in;
  d.r_out = r_out;
  return d;
}

ConvergenceDomain ConvergenceDomain::exterior(Real r) {
  ConvergenceDomain d;
  d.kind = DomainKind::ExteriorDisk;
  d.r_in = r;
  return d;
}

ConvergenceDomain ConvergenceDomain::everywhere() { return {}; }

ConvergenceDomain ConvergenceDomain::empty() {
  ConvergenceDomain d;
  d.kind = DomainKind::Empty;
  d.r_in = 0.0L;
  d.r_out = 0.0L;
  return d;
}

bool ConvergenceDomain::contains(Complex z, const QContext& ctx, Real guard) const {
  const Real r = std::abs(z);
  bool radial = false;
  switch (kind) {
    case DomainKind::Disk: radial = r < r_out; break;
    case DomainKind::Annulus: radial = r > r_in && r < r_out; break;
    case DomainKind::ExteriorDisk: radial = r > r_in; break;
    case DomainKind::Everywhere: radial = true; break;
    case DomainKind::Empty: radial = false; break;
  }
  if (!radial) return false;
  for (const QSpiral& s : excluded_spirals) {
    if (z == Complex{} || s.distance(z, ctx) <= guard) return false;
  }
  return true;
}

std::string ConvergenceDomain::describe() const {
  char buf[128];
  switch (kind) {
    case DomainKind::Disk:
      std::snprintf(buf, sizeof buf, "|z| < %.6Lg", r_out);
      break;
    case DomainKind::Annulus:
      std::snprintf(buf, sizeof buf, "%.6Lg < |z| < %.6Lg", r_in, r_out);
      break;
    case DomainKind::ExteriorDisk:
      std::snprintf(buf, sizeof buf, "|z| > %.6Lg", r_in);
      break;
    case DomainKind::Everywhere: return "everywhere";
    case DomainKind::Empty: return "nowhere (divergent)";
  }
  return buf;
}

ConvergenceDomain unilateral_domain(std::span<const Complex> upper,
                                    std::span<const Complex> lower, const QContext& ctx) {
  if (positive_tail_terminates(upper, ctx)) return ConvergenceDomain::everywhere();
  const long long excess = 1 + static_cast<long long>(lower.size()) -
                           static_cast<long long>(upper.size());
  if (excess > 0) return ConvergenceDomain::everywhere();
  if (excess == 0) return ConvergenceDomain::disk(1.0L);
  return ConvergenceDomain::empty();
}

ConvergenceDomain bilateral_domain(std::span<const Complex> upper,
                                   std::span<const Complex> lower, const QContext& ctx) {
  const long long r = static_cast<long long>(upper.size());
  const long long s = static_cast<long long>(lower.size());

  Real r_out = 0.0L;
  if (positive_tail_terminates(upper, ctx) || s > r) {
    r_out = kInf;
  } else if (s == r) {
    r_out = 1.0L;
  } else {
    return ConvergenceDomain::empty();
  }

  Real r_in = 0.0L;
  if (!negative_tail_terminates(lower, ctx)) {
    // Quadratic growth exponent of c_{-m}: (#zero lower) - (#zero upper).
    const long long z_excess = static_cast<long long>(count_zero(lower)) -
                               static_cast<long long>(count_zero(upper));
    if (z_excess < 0) return ConvergenceDomain::empty();
    if (z_excess == 0) {
      Real ratio = 1.0L;
      for (Complex b : lower)
        if (b != Complex{}) ratio *= std::abs(b);
      for (Complex a : upper)
        if (a != Complex{}) ratio /= std::abs(a);
      r_in = ratio;
    }
  }
  if (r_out == kInf) return ConvergenceDomain::exterior(r_in);
  return ConvergenceDomain::annulus(r_in, r_out);
}

// ---------------------------------------------------------------------------
// Formal series
// ---------------------------------------------------------------------------

std::string SeriesDescriptor::describe() const {
  std::string arg = arg_scale == Complex(1.0L) ? "xi"
                    : arg_scale == Complex(-1.0L) ? "-xi"
                                                  : format_complex(arg_scale, 8) + "*xi";
  switch (kind) {
    case SeriesKind::OnePsiOne:
      return "1psi1(" + format_complex(a, 8) + ";" + format_complex(b, 8) + ";q," + arg + ")";
    case SeriesKind::OnePsiZero:
      return "1psi0(" + format_complex(a, 8) + ";-;q," + arg + ")";
    case SeriesKind::ZeroPsiOne:
      return "0psi1(-;" + format_complex(b, 8) + ";q," + arg + ")";
    case SeriesKind::Generic:
      return label.empty() ? "generic" : label;
  }
  return "generic";
}

FormalBilateralSeries::FormalBilateralSeries(SeriesDescriptor descriptor, Coefficient coeff,
                                             int window)
    : descriptor_(std::move(descriptor)), coeff_(std::move(coeff)), window_(window) {
  if (window_ < 1) throw Error(ErrorKind::InvalidArgument, "FormalBilateralSeries: window < 1");
  if (!coeff_) throw Error(ErrorKind::InvalidArgument, "FormalBilateralSeries: empty coefficient");
}

Complex FormalBilateralSeries::coeff(int n) const {
  if (n < -window_ || n > window_) {
    throw Error(ErrorKind::InvalidArgument,
                "FormalBilateralSeries: index " + std::to_string(n) + " outside window");
  }
  return coeff_(n);
}

namespace {

Complex signed_power(Complex s, int n) {
  return s == Complex(1.0L) ? Complex(1.0L) : std::pow(s, n);
}

// (-1)^n q^{n(n-1)/2}
Real gauss_sign_power(const QContext& ctx, int n) {
  const Real nr = static_cast<Real>(n);
  const Real mag = std::exp(0.5L * nr * (nr - 1.0L) * ctx.log_q());
  return (n % 2 == 0) ? mag : -mag;
}

}  // namespace

FormalBilateralSeries FormalBilateralSeries::one_psi_one(Complex a, Complex b,
                                                         const QContext& ctx,
                                                         Complex arg_scale) {
  SeriesDescriptor d{SeriesKind::OnePsiOne, a, b, arg_scale, {}};
  return FormalBilateralSeries(
      d,
      [a, b, ctx, arg_scale](int n) {
        return qpoch_finite(a, ctx, n) / qpoch_finite(b, ctx, n) * signed_power(arg_scale, n);
      },
      ctx.max_terms());
}

FormalBilateralSeries FormalBilateralSeries::one_psi_zero(Complex a, const QContext& ctx,
                                                          Complex arg_scale) {
  SeriesDescriptor d{SeriesKind::OnePsiZero, a, {}, arg_scale, {}};
  return FormalBilateralSeries(
      d,
      [a, ctx, arg_scale](int n) {
        return qpoch_finite(a, ctx, n) / gauss_sign_power(ctx, n) * signed_power(arg_scale, n);
      },
      ctx.max_terms());
}

FormalBilateralSeries FormalBilateralSeries::zero_psi_one(Complex b, const QContext& ctx,
                                                          Complex arg_scale) {
  SeriesDescriptor d{SeriesKind::ZeroPsiOne, {}, b, arg_scale, {}};
  return FormalBilateralSeries(
      d,
      [b, ctx, arg_scale](int n) {
        return gauss_sign_power(ctx, n) / qpoch_finite(b, ctx, n) * signed_power(arg_scale, n);
      },
      ctx.max_terms());
}

FormalBilateralSeries FormalBilateralSeries::unilateral_phi(std::vector<Complex> upper,
                                                            std::vector<Complex> lower,
                                                            const QContext& ctx) {
  SeriesDescriptor d;
  d.label = std::to_string(upper.size()) + "phi" + std::to_string(lower.size());
  const int excess =
      1 + static_cast<int>(lower.size()) - static_cast<int>(upper.size());
  return FormalBilateralSeries(
      d,
      [upper = std::move(upper), lower = std::move(lower), ctx, excess](int n) -> Complex {
        if (n < 0) return {};
        Complex c = Complex(1.0L) / qpoch_finite(Complex(ctx.q()), ctx, n);
        for (Complex a : upper) c *= qpoch_finite(a, ctx, n);
        for (Complex b : lower) c /= qpoch_finite(b, ctx, n);
        const Real g = gauss_sign_power(ctx, n);
        for (int i = 0; i < excess; ++i) c *= g;
        for (int i = 0; i > excess; --i) c /= g;
        return c;
      },
      ctx.max_terms());
}

EvalResult evaluate_formal(const FormalBilateralSeries& s, Complex z, const QContext& ctx) {
  const SeriesDescriptor& d = s.descriptor();
  const Complex w = d.arg_scale * z;
  switch (d.kind) {
    case SeriesKind::OnePsiOne: {
      const std::array<Complex, 1> up{d.a}, lo{d.b};
      return eval_bilateral_psi(up, lo, ctx, w);
    }
    case SeriesKind::OnePsiZero: {
      const std::array<Complex, 1> up{d.a};
      return eval_bilateral_psi(up, {}, ctx, w);
    }
    case SeriesKind::ZeroPsiOne: {
      const std::array<Complex, 1> lo{d.b};
      return eval_bilateral_psi({}, lo, ctx, w);
    }
    case SeriesKind::Generic: break;
  }
  const int cap = std::min(ctx.max_terms(), s.window());
  const detail::TailSum pos = detail::sum_tail_observed(
      ctx, [&](int n) { return s.coeff(n) * std::pow(z, n); }, cap,
      ErrorKind::TailNotConverged, "evaluate_formal");
  EvalResult r;
  r.terms_pos = pos.terms;
  Complex total = pos.sum;
  Real err = pos.err_abs;
  Real scale = pos.scale;
  if (s.coeff(-1) != Complex{} || s.coeff(-2) != Complex{}) {
    if (z == Complex{}) throw Error(ErrorKind::ZeroArgument, "evaluate_formal: z = 0");
    const detail::TailSum neg = detail::sum_tail_observed(
        ctx, [&](int m) { return s.coeff(-m - 1) * std::pow(z, -m - 1); }, cap,
        ErrorKind::TailNotConverged, "evaluate_formal");
    total += neg.sum;
    err += neg.err_abs;
    scale = std::max(scale, neg.scale);
    r.terms_neg = neg.terms;
  }
  r.value = total;
  r.err_estimate = err / std::max(scale, std::abs(total));
  return r;
}

// ---------------------------------------------------------------------------
// Numeric evaluators
// ---------------------------------------------------------------------------

EvalResult eval_unilateral_phi(std::span<const Complex> upper, std::span<const Complex> lower,
                               const QContext& ctx, Complex z) {
  for (Complex b : lower) {
    if (detail::near_inverse_power(b, ctx, 0, max_index(ctx), kSpiralGuard).near) {
      throw Error(ErrorKind::ParameterPole,
                  "eval_unilateral_phi: lower parameter on q^{-N}: " + describe_param("b", b));
    }
  }
  const ConvergenceDomain dom = unilateral_domain(upper, lower, ctx);
  if (!dom.contains(z, ctx)) {
    throw Error(ErrorKind::DivergenceDomain,
                "eval_unilateral_phi: z = " + format_complex(z, 8) + " outside " + dom.describe());
  }
  const Real q = ctx.q();
  const int excess = 1 + static_cast<int>(lower.size()) - static_cast<int>(upper.size());
  const Real abs_z = std::abs(z);
  const detail::TailSum s = detail::sum_tail(
      ctx, Complex(1.0L),
      [&](int n, Complex tn) {
        const Real qn = std::pow(q, static_cast<Real>(n));
        Complex ratio = z / (1.0L - qn * q);
        for (Complex a : upper) {
          const Complex f = Complex(1.0L) - a * qn;
          if (detail::is_vanishing_factor(f)) return detail::Step{Complex{}, 0.0L};
          ratio *= f;
        }
        for (Complex b : lower) ratio /= (Complex(1.0L) - b * qn);
        for (int i = 0; i < excess; ++i) ratio *= -qn;
        for (int i = 0; i > excess; --i) ratio /= -qn;
        // bound for every later index m = n+1, n+2, ...
        const Real qm = qn * q;
        Real bound = abs_z / (1.0L - qm * q);
        for (Complex a : upper) bound *= 1.0L + std::abs(a) * qm;
        for (Complex b : lower) {
          const Real d = 1.0L - std::abs(b) * qm;
          bound = d > 0.0L ? bound / d : kInf;
        }
        for (int i = 0; i < excess; ++i) bound *= qm;
        return detail::Step{tn * ratio, bound};
      },
      ctx.max_terms(), "eval_unilateral_phi");
  EvalResult r;
  r.value = s.sum;
  r.err_estimate = s.scale == 0.0L ? 0.0L : s.err_abs / s.scale;
  r.terms_pos = s.terms;
  return r;
}

EvalResult eval_bilateral_psi(std::span<const Complex> upper, std::span<const Complex> lower,
                              const QContext& ctx, Complex z) {
  if (z == Complex{}) throw Error(ErrorKind::ZeroArgument, "eval_bilateral_psi: z = 0");
  for (Complex a : upper) {
    const detail::PowerHit hit = detail::near_inverse_power(a, ctx, -max_index(ctx), -1, kSpiralGuard);
    if (hit.near) {
      throw Error(ErrorKind::ParameterPole,
                  "eval_bilateral_psi: (a;q)_n has a pole for n < 0: " + describe_param("a", a));
    }
  }
  for (Complex b : lower) {
    if (detail::near_inverse_power(b, ctx, 0, max_index(ctx), kSpiralGuard).near) {
      throw Error(ErrorKind::ParameterPole,
                  "eval_bilateral_psi: (b;q)_n vanishes for n > 0: " + describe_param("b", b));
    }
  }
  const ConvergenceDomain dom = bilateral_domain(upper, lower, ctx);
  if (!dom.contains(z, ctx)) {
    throw Error(ErrorKind::DivergenceDomain,
                "eval_bilateral_psi: z = " + format_complex(z, 8) + " outside " + dom.describe());
  }

  const Real q = ctx.q();
  const Real log_q = ctx.log_q();
  const int sr = static_cast<int>(lower.size()) - static_cast<int>(upper.size());
  const Real abs_z = std::abs(z);

  const detail::TailSum pos = detail::sum_tail(
      ctx, Complex(1.0L),
      [&](int n, Complex tn) {
        const Real qn = std::pow(q, static_cast<Real>(n));
        Complex ratio = z;
        for (Complex a : upper) {
          const Complex f = Complex(1.0L) - a * qn;
          if (detail::is_vanishing_factor(f)) return detail::Step{Complex{}, 0.0L};
          ratio *= f;
        }
        for (Complex b : lower) ratio /= (Complex(1.0L) - b * qn);
        for (int i = 0; i < sr; ++i) ratio *= -qn;
        for (int i = 0; i > sr; --i) ratio /= -qn;
        const Real qm = qn * q;
        Real bound = abs_z;
        for (Complex a : upper) bound *= 1.0L + std::abs(a) * qm;
        for (Complex b : lower) {
          const Real d = 1.0L - std::abs(b) * qm;
          bound = d > 0.0L ? bound / d : kInf;
        }
        for (int i = 0; i < sr; ++i) bound *= qm;
        return detail::Step{tn * ratio, bound};
      },
      ctx.max_terms(), "eval_bilateral_psi");

  // t_{-p-1} = t_{-p} * prod(1 - b q^k) / prod(1 - a q^k) * (-q^k)^{-(s-r)} / z
  // with k = -(p+1).
  auto negative_step = [&](int p, Complex tp) {
    const Real k = -static_cast<Real>(p + 1);
    const Real qk = std::exp(k * log_q);
    Complex ratio = Complex(1.0L) / z;
    for (Complex b : lower) {
      const Complex f = Complex(1.0L) - b * qk;
      if (detail::is_vanishing_factor(f)) return detail::Step{Complex{}, 0.0L};
      ratio *= f;
    }
    for (Complex a : upper) ratio /= (Complex(1.0L) - a * qk);
    for (int i = 0; i < sr; ++i) ratio /= -qk;
    for (int i = 0; i > sr; --i) ratio *= -qk;
    // Bound for the later steps, Q = q^{-(p+2)}, in log form.
    const Real log_big = -(static_cast<Real>(p) + 2.0L) * log_q;
    const Real inv_big = std::exp(-log_big);
    Real log_bound = -std::log(abs_z) - static_cast<Real>(sr) * log_big;
    for (Complex b : lower) {
      if (b != Complex{}) log_bound += log_big + std::log(std::abs(b) + inv_big);
    }
    for (Complex a : upper) {
      if (a == Complex{}) continue;
      const Real d = std::abs(a) - inv_big;
      if (d <= 0.0L) return detail::Step{tp * ratio, kInf};
      log_bound -= log_big + std::log(d);
    }
    return detail::Step{tp * ratio, std::exp(log_bound)};
  };
  const detail::Step first_neg = negative_step(0, Complex(1.0L));
  EvalResult r;
  r.terms_pos = pos.terms;
  Complex total = pos.sum;
  Real err = pos.err_abs;
  Real scale = pos.scale;
  if (!(first_neg.next == Complex{} && first_neg.ratio_bound == 0.0L)) {
    const detail::TailSum neg =
        detail::sum_tail(ctx, first_neg.next,
                         [&](int i, Complex t) { return negative_step(i + 1, t); },
                         ctx.max_terms(), "eval_bilateral_psi");
    total += neg.sum;
    err += neg.err_abs;
    scale = std::max(scale, neg.scale);
    r.terms_neg = neg.terms;
  }
  r.value = check_finite(total, "eval_bilateral_psi");
  r.err_estimate = err / std::max(scale, std::abs(total));
  return r;
}

// ---------------------------------------------------------------------------
// q-difference equations
// ---------------------------------------------------------------------------

Complex Polynomial::operator()(Complex x) const {
  Complex acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool Polynomial::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](Complex c) { return c == Complex{}; });
}

QDifferenceEquation::QDifferenceEquation(std::array<Polynomial, 3> shift, std::string name)
    : shift_(std::move(shift)), name_(std::move(name)) {
  const auto nonzero = std::count_if(shift_.begin(), shift_.end(),
                                     [](const Polynomial& p) { return !p.is_zero(); });
  if (nonzero < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "QDifferenceEquation: at least two coefficients must be nonzero");
  }
}

QDifferenceEquation QDifferenceEquation::heine(Complex a, Complex b, Complex c,
                                               const QContext& ctx) {
  const Complex q(ctx.q());
  // (c - abq x) u(q^2 x) - (c + q - (a+b) q x) u(qx) + q (1 - x) u(x) = 0
  return QDifferenceEquation({Polynomial{{q, -q}}, Polynomial{{-(c + q), (a + b) * q}},
                              Polynomial{{c, -a * b * q}}},
                             "heine");
}

QDifferenceEquation QDifferenceEquation::one_psi_one(Complex a, Complex b, const QContext& ctx) {
  const Complex q(ctx.q());
  return QDifferenceEquation(
      {Polynomial{{Complex(-1.0L), Complex(1.0L)}}, Polynomial{{b / q, -a}}, Polynomial{}},
      "1psi1");
}

QDifferenceEquation QDifferenceEquation::degeneration_a(Complex b, const QContext& ctx) {
  const Complex q(ctx.q());
  return QDifferenceEquation(
      {Polynomial{{Complex(-1.0L), Complex(1.0L)}}, Polynomial{{b / q}}, Polynomial{}},
      "degeneration-A");
}

QDifferenceEquation QDifferenceEquation::degeneration_b(Complex a, const QContext& ctx) {
  const Complex q(ctx.q());
  return QDifferenceEquation(
      {Polynomial{{Complex{}, Complex(1.0L)}}, Polynomial{{Complex(1.0L) / q, -a}}, Polynomial{}},
      "degeneration-B");
}

Real qdiff_residual(const QDifferenceEquation& eq, const ComplexFunction& u,
                    const QContext& ctx, Complex x) {
  Complex sum{};
  Real largest = 0.0L;
  Complex shifted = x;
  for (int j = 0; j < 3; ++j) {
    const Polynomial& p = eq.coefficient(j);
    if (!p.is_zero()) {
      const Complex term = p(x) * u(shifted);
      sum += term;
      largest = std::max(largest, std::abs(term));
    }
    shifted *= ctx.q();
  }
  if (largest == 0.0L) return 0.0L;
  return std::abs(sum) / largest;
}

IdentityReport formal_recurrence_check(const FormalBilateralSeries& s,
                                       const QDifferenceEquation& eq, const QContext& ctx,
                                       int n_lo, int n_hi, Real tol) {
  IdentityReport report;
  report.name = "recurrence:" + s.descriptor().describe() + ":" + eq.name();
  report.tol = tol;
  for (int n = n_lo; n <= n_hi; ++n) {
    const std::string params = "n=" + std::to_string(n);
    try {
      Complex sum{};
      Real largest = 0.0L;
      for (int j = 0; j < 3; ++j) {
        const auto& coeffs = eq.coefficient(j).coeffs;
        for (std::size_t d = 0; d < coeffs.size(); ++d) {
          if (coeffs[d] == Complex{}) continue;
          const int idx = n - static_cast<int>(d);
          const Complex term = coeffs[d] *
                               std::exp(static_cast<Real>(j) * static_cast<Real>(idx) * ctx.log_q()) *
                               s.coeff(idx);
          sum += term;
          largest = std::max(largest, std::abs(term));
        }
      }
      report.add(params, sum, Complex{}, largest == 0.0L ? 0.0L : std::abs(sum) / largest);
    } catch (const Error& e) {
      report.add_failure(params, e.what());
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Watson
// ---------------------------------------------------------------------------

namespace {

Complex phi21(Complex a, Complex b, Complex c, const QContext& ctx, Complex x) {
  const std::array<Complex, 2> up{a, b};
  const std::array<Complex, 1> lo{c};
  return eval_unilateral_phi(up, lo, ctx, x).value;
}

// (u, q/u; q)_inf
ScaledComplex pair_product(Complex u, const QContext& ctx) {
  const std::array<Complex, 2> args{u, ctx.q() / u};
  return qpoch_infinite_scaled(args, ctx);
}

void check_watson_point(Complex a, Complex b, Complex c, const QContext& ctx, Complex x) {
  if (a == Complex{} || b == Complex{} || c == Complex{}) {
    throw Error(ErrorKind::InvalidArgument, "watson: a, b, c must be nonzero");
  }
  if (x == Complex{} || std::abs(x) >= 1.0L) {
    throw Error(ErrorKind::DomainOverlapEmpty, "watson: 2phi1 at x needs 0 < |x| < 1");
  }
  const Complex w = c * ctx.q() / (a * b * x);
  if (std::abs(w) >= 1.0L) {
    throw Error(ErrorKind::DomainOverlapEmpty,
                "watson: |cq/(abx)| = " + format_complex(std::abs(w), 6) + " >= 1");
  }
  if (QSpiral(Complex(1.0L)).distance(a / b, ctx) <= kSpiralGuard) {
    throw Error(ErrorKind::ParameterPole, "watson: a/b lies on q^Z");
  }
  // (-x,-q/x) and (-ax,-q/ax) cancel between coefficients and solutions;
  // what remains has poles only where (x,q/x;q)_inf vanishes.
  if (QSpiral(Complex(1.0L)).distance(x, ctx) <= kSpiralGuard) {
    throw Error(ErrorKind::SpiralProximity,
                "watson: " + format_complex(x, 8) + " lies on q^Z");
  }
}

}  // namespace

Complex watson_solution_at_infinity(Complex a, Complex b, Complex c, const QContext& ctx,
                                    Complex x) {
  const Complex q(ctx.q());
  const Complex w = c * q / (a * b * x);
  const ScaledComplex pre = pair_product(-a * x, ctx) / pair_product(-x, ctx);
  return (pre * ScaledComplex(phi21(a, a * q / c, a * q / b, ctx, w))).value();
}

IdentityReport watson_connection_check(Complex a, Complex b, Complex c, const QContext& ctx,
                                       Complex x, Real tol) {
  check_watson_point(a, b, c, ctx, x);
  IdentityReport report;
  report.name = "watson";
  report.tol = tol;

  const Complex lhs = phi21(a, b, c, ctx, x);
  ScaledComplex den_ab = qpoch_infinite_scaled(std::array<Complex, 1>{b / a}, ctx);
  ScaledComplex den_ba = qpoch_infinite_scaled(std::array<Complex, 1>{a / b}, ctx);
  if (den_ab.is_zero() || den_ba.is_zero()) {
    throw Error(ErrorKind::ParameterPole, "watson: (b/a;q)_inf or (a/b;q)_inf vanishes");
  }
  // coefficient times solution for (s, t) = (a, b) and (b, a):
  //   (t, c/s; q)_inf / (c, t/s; q)_inf * (sx, q/(sx))/(x, q/x) * 2phi1(s, sq/c; sq/t; q, cq/(abx))
  const Complex q(ctx.q());
  const Complex w = c * q / (a * b * x);
  auto term = [&](Complex s, Complex t) {
    const std::array<Complex, 2> num{t, c / s};
    const std::array<Complex, 2> den{c, t / s};
    ScaledComplex k = qpoch_infinite_scaled(num, ctx) / qpoch_infinite_scaled(den, ctx);
    if (!is_finite(k.mantissa)) throw Error(ErrorKind::ParameterPole, "watson: coefficient pole");
    k *= pair_product(s * x, ctx);
    k /= pair_product(x, ctx);
    return (k * ScaledComplex(phi21(s, s * q / c, s * q / t, ctx, w))).value();
  };
  const Complex rhs = term(a, b) + term(b, a);
  report.add(format_params({{"a", a}, {"b", b}, {"c", c}, {"q", Complex(ctx.q())}, {"x", x}}),
             lhs, rhs);
  return report;
}

}  // namespace qresum
