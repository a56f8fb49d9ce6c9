#include "qresum/suites.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>

#include "parallel.hpp"
#include "qresum/limits.hpp"

namespace qresum {

namespace {

// lhs, rhs and an optional precomputed relative error.
struct Pair {
  Complex lhs;
  Complex rhs;
  std::optional<Real> rel_err;
};

struct Task {
  std::string params;
  std::function<Pair()> run;
};

IdentityReport run_tasks(std::string name, Real default_tol, const SuiteOptions& opts,
                         const std::vector<Task>& tasks) {
  IdentityReport report;
  report.name = std::move(name);
  report.tol = opts.tol.value_or(default_tol);
  const auto results = detail::parallel_map(tasks.size(), opts.jobs, [&](std::size_t i) {
    IdentityPoint p;
    p.params = tasks[i].params;
    try {
      const Pair r = tasks[i].run();
      p.lhs = r.lhs;
      p.rhs = r.rhs;
      p.rel_err = r.rel_err.value_or(relative_error(r.lhs, r.rhs));
    } catch (const Error& e) {
      p.error = std::string(to_string(e.kind())) + ": " + e.what();
    }
    return p;
  });
  for (const IdentityPoint& p : results) {
    if (!p.error.empty()) {
      report.add_failure(p.params, p.error);
    } else {
      report.add(p.params, p.lhs, p.rhs, p.rel_err);
    }
  }
  return report;
}

QContext context(Real q, const SuiteOptions& opts) {
  return opts.max_terms > 0 ? QContext(q, opts.max_terms) : QContext(q);
}

std::vector<Complex> lambdas(const SuiteOptions& opts, std::initializer_list<Real> defaults) {
  if (opts.lambda) return {*opts.lambda};
  std::vector<Complex> out;
  for (Real l : defaults) out.emplace_back(l);
  return out;
}

// Deterministic points in sqrt(q) < |z| < 1/sqrt(q), |arg z| < 0.9 pi.
std::vector<Complex> reduced_annulus_points(Real q, int n) {
  std::vector<Complex> pts;
  constexpr Real golden = 0.6180339887498948482L;
  for (int j = 0; j < n; ++j) {
    const Real t = (static_cast<Real>(j) + 0.5L) / static_cast<Real>(n);
    const Real r = std::pow(q, 0.5L - t);
    Real frac = static_cast<Real>(j + 1) * golden;
    frac -= std::floor(frac);
    pts.push_back(std::polar(r, 0.9L * kPi * (2.0L * frac - 1.0L)));
  }
  return pts;
}

const std::array<Real, 4> kThetaQs{0.1L, 0.3L, 0.5L, 0.7L};

IdentityReport theta_duality(const SuiteOptions& opts) {
  std::vector<Task> tasks;
  for (Real q : kThetaQs) {
    for (Complex z : reduced_annulus_points(q, 20)) {
      tasks.push_back({format_params({{"q", q}, {"z", z}}), [q, z, &opts] {
                         const QContext ctx = context(q, opts);
                         return Pair{theta(z, ctx).value, theta_triple_product(z, ctx).value(), {}};
                       }});
    }
  }
  return run_tasks("theta-duality", 1e-12L, opts, tasks);
}

IdentityReport theta_functional(const SuiteOptions& opts) {
  std::vector<Task> tasks;
  for (Real q : kThetaQs) {
    for (Complex z : reduced_annulus_points(q, 20)) {
      tasks.push_back({format_params({{"q", q}, {"z", z}}) + ";check=inversion", [q, z, &opts] {
                         const QContext ctx = context(q, opts);
                         return Pair{theta(z, ctx).value, theta(q / z, ctx).value, {}};
                       }});
      for (int k = -5; k <= 5; ++k) {
        tasks.push_back(
            {format_params({{"q", q}, {"z", z}}) + ";k=" + std::to_string(k), [q, z, k, &opts] {
               const QContext ctx = context(q, opts);
               const Real kr = static_cast<Real>(k);
               const Complex shifted = z * std::pow(q, kr);
               ScaledComplex rhs = theta_scaled(z, ctx);
               rhs *= ScaledComplex::from_log(-kr * std::log(z) -
                                              0.5L * kr * (kr - 1.0L) * ctx.log_q());
               return Pair{theta_triple_product(shifted, ctx).value(), rhs.value(), {}};
             }});
      }
    }
  }
  return run_tasks("theta-functional", 1e-12L, opts, tasks);
}

// sum |t_n| / |sum t_n| for 1psi1(a;b;q,z). Samples where the bilateral sum
// cancels by more than five digits are redrawn: no working-precision
// summation reaches 1e-10 there.
Real ramanujan_condition(Real q, Complex a, Complex b, Complex z) {
  Complex sum{};
  Real abs_sum = 0.0L;
  Complex t(1.0L);
  Real qn = 1.0L;
  for (int n = 0; n < 4000 && (n < 10 || std::abs(t) > 1e-22L * abs_sum); ++n) {
    sum += t;
    abs_sum += std::abs(t);
    t *= (Complex(1.0L) - a * qn) / (Complex(1.0L) - b * qn) * z;
    qn *= q;
  }
  t = Complex(1.0L);
  Real qm = 1.0L;
  for (int m = 1; m < 4000; ++m) {
    qm /= q;
    t *= (Complex(1.0L) - b * qm) / (Complex(1.0L) - a * qm) / z;
    sum += t;
    abs_sum += std::abs(t);
    if (m > 10 && std::abs(t) < 1e-22L * abs_sum) break;
  }
  return abs_sum / std::abs(sum);
}

IdentityReport ramanujan(const SuiteOptions& opts) {
  const int n = opts.samples > 0 ? opts.samples : 100;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto u = [&](double lo, double hi) { return static_cast<Real>(lo + (hi - lo) * unit(rng)); };
  const std::array<Real, 3> qs{0.3L, 0.5L, 0.7L};
  std::vector<Task> tasks;
  for (int i = 0; i < n; ++i) {
    const Real q = qs[static_cast<std::size_t>(i) % qs.size()];
    Complex a, b, z;
    do {
      a = std::polar(u(0.4, 1.6), u(-3.0, 3.0));
      const Real rho = u(0.05, 0.7);
      b = a * std::polar(rho, u(-3.0, 3.0));
      z = std::polar(rho + (1.0L - rho) * u(0.15, 0.85), u(-3.0, 3.0));
    } while (ramanujan_condition(q, a, b, z) > 1e5L);
    tasks.push_back({format_params({{"q", q}, {"a", a}, {"b", b}, {"z", z}}), [=, &opts] {
                       const QContext ctx = context(q, opts);
                       const std::array<Complex, 1> up{a}, lo{b};
                       const Complex lhs = eval_bilateral_psi(up, lo, ctx, z).value;
                       const Complex qc(q);
                       const std::array<Complex, 4> num{qc, b / a, a * z, qc / (a * z)};
                       const std::array<Complex, 4> den{b, qc / a, z, b / (a * z)};
                       const Complex rhs =
                           (qpoch_infinite_scaled(num, ctx) / qpoch_infinite_scaled(den, ctx))
                               .value();
                       return Pair{lhs, rhs, {}};
                     }});
  }
  return run_tasks("ramanujan", 1e-10L, opts, tasks);
}

IdentityReport psi01_closed_form(const SuiteOptions& opts) {
  const int n = opts.samples > 0 ? opts.samples : 30;
  std::mt19937_64 rng(opts.seed + 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto u = [&](double lo, double hi) { return static_cast<Real>(lo + (hi - lo) * unit(rng)); };
  const std::array<Real, 3> qs{0.3L, 0.5L, 0.7L};
  std::vector<Task> tasks;
  for (int i = 0; i < n; ++i) {
    const Real q = qs[static_cast<std::size_t>(i) % qs.size()];
    const Complex b = std::polar(u(0.1, 0.8), u(-3.0, 3.0));
    const Complex x = std::polar(std::abs(b) * u(1.3, 8.0), u(-3.0, 3.0));
    tasks.push_back({format_params({{"q", q}, {"b", b}, {"x", x}}), [=, &opts] {
                       const QContext ctx = context(q, opts);
                       const std::array<Complex, 1> lo{b};
                       const Complex lhs = eval_bilateral_psi({}, lo, ctx, x).value;
                       const Complex qc(q);
                       ScaledComplex rhs = qpoch_infinite_scaled(qc, ctx) / qpoch_infinite_scaled(b, ctx);
                       rhs *= theta_scaled(-x, ctx);
                       rhs /= theta_scaled(-qc * x / b, ctx);
                       rhs *= qpoch_infinite_scaled(qc * x / b, ctx);
                       return Pair{lhs, rhs.value(), {}};
                     }});
  }
  return run_tasks("psi01-closed-form", 1e-10L, opts, tasks);
}

// Shared grids of the two resummation theorems.
const std::array<Real, 3> kPipelineQs{0.4L, 0.5L, 0.6L};
const std::array<Real, 3> kPipelineB{0.15L, 0.2L, 0.3L};
const std::array<Real, 3> kPipelineA{0.7L, 1.3L, 2.0L};

// The Jackson sum for psi_A converges geometrically with ratio about |x|, so
// the default window certifies |x| <= 0.5; psi_B needs |a x| >= 2.2.
std::vector<Complex> grid_x_A() {
  return {Complex(0.1L),         Complex(0.2L),        Complex(0.3L),         Complex(0.4L),
          Complex(0.45L),        Complex(0.3L, 0.2L),  Complex(-0.25L, 0.3L), Complex(0.15L, -0.35L),
          Complex(0.0L, 0.4L),   Complex(-0.3L, -0.1L)};
}

std::vector<Complex> grid_x_B() {
  return {Complex(3.5L),         Complex(4.0L),        Complex(5.5L),        Complex(8.0L),
          Complex(12.0L),        Complex(3.5L, 2.0L),  Complex(-4.0L, 1.5L), Complex(2.0L, -4.0L),
          Complex(0.0L, 6.0L),   Complex(-5.0L, -3.0L)};
}

struct GridPoint {
  Real q;
  Complex param;
  Complex lambda;
  Complex x;
};

std::vector<GridPoint> pipeline_grid(bool variant_a, const SuiteOptions& opts) {
  std::vector<GridPoint> pts;
  const auto& params = variant_a ? kPipelineB : kPipelineA;
  const auto xs = variant_a ? grid_x_A() : grid_x_B();
  for (Real q : kPipelineQs)
    for (Real p : params)
      for (Complex lam : lambdas(opts, {0.9L, 1.1L}))
        for (Complex x : xs) pts.push_back({q, Complex(p), lam, x});
  return pts;
}

std::string grid_params(const GridPoint& g, bool variant_a) {
  return format_params(
      {{"q", g.q}, {variant_a ? "b" : "a", g.param}, {"lambda", g.lambda}, {"x", g.x}});
}

LaplaceConfig config_for(Complex lambda) {
  LaplaceConfig cfg;
  cfg.lambda = lambda;
  return cfg;
}

IdentityReport pipeline(bool variant_a, const SuiteOptions& opts) {
  std::vector<Task> tasks;
  for (const GridPoint& g : pipeline_grid(variant_a, opts)) {
    tasks.push_back({grid_params(g, variant_a), [g, variant_a, &opts] {
                       const QContext ctx = context(g.q, opts);
                       const LaplaceConfig cfg = config_for(g.lambda);
                       if (variant_a) {
                         return Pair{resum_psiA(g.param, cfg, ctx, g.x).value,
                                     closedform_psiA(g.param, cfg, ctx, g.x).value, {}};
                       }
                       return Pair{resum_psiB(g.param, cfg, ctx, g.x).value,
                                   closedform_psiB(g.param, cfg, ctx, g.x).value, {}};
                     }});
  }
  return run_tasks(variant_a ? "pipeline-A" : "pipeline-B", 1e-8L, opts, tasks);
}

std::vector<IdentityReport> connection(const SuiteOptions& opts) {
  std::vector<IdentityReport> out;
  for (bool variant_a : {true, false}) {
    const ConnectionVariant v = variant_a ? ConnectionVariant::A : ConnectionVariant::B;
    std::vector<Task> periodic;
    std::vector<Task> factor;
    for (const GridPoint& g : pipeline_grid(variant_a, opts)) {
      periodic.push_back({grid_params(g, variant_a), [g, v, &opts] {
                            const QContext ctx = context(g.q, opts);
                            const auto c = connection_coeff(v, g.param, config_for(g.lambda), ctx);
                            return Pair{c(g.q * g.x), c(g.x), {}};
                          }});
      factor.push_back({grid_params(g, variant_a), [g, variant_a, v, &opts] {
                          const QContext ctx = context(g.q, opts);
                          const LaplaceConfig cfg = config_for(g.lambda);
                          const auto c = connection_coeff(v, g.param, cfg, ctx);
                          if (variant_a) {
                            return Pair{closedform_psiA(g.param, cfg, ctx, g.x).value,
                                        c(g.x) * vtilde(g.param, ctx, g.x), {}};
                          }
                          return Pair{closedform_psiB(g.param, cfg, ctx, g.x).value,
                                      c(g.x) * vhat(g.param, ctx, g.x), {}};
                        }});
    }
    const std::string tag = variant_a ? "A" : "B";
    out.push_back(run_tasks("connection-periodic-" + tag, 1e-10L, opts, periodic));
    out.push_back(run_tasks("connection-factor-" + tag, 1e-10L, opts, factor));
  }
  return out;
}

std::vector<IdentityReport> lambda_shift(const SuiteOptions& opts) {
  std::vector<IdentityReport> out;
  for (bool variant_a : {true, false}) {
    std::vector<Task> tasks;
    for (const GridPoint& g : pipeline_grid(variant_a, opts)) {
      tasks.push_back({grid_params(g, variant_a), [g, variant_a, &opts] {
                         const QContext ctx = context(g.q, opts);
                         const LaplaceConfig c1 = config_for(g.lambda);
                         const LaplaceConfig c2 = config_for(g.lambda * g.q);
                         if (variant_a) {
                           return Pair{closedform_psiA(g.param, c1, ctx, g.x).value,
                                       closedform_psiA(g.param, c2, ctx, g.x).value, {}};
                         }
                         return Pair{closedform_psiB(g.param, c1, ctx, g.x).value,
                                     closedform_psiB(g.param, c2, ctx, g.x).value, {}};
                       }});
    }
    out.push_back(run_tasks(variant_a ? "lambda-shift-A" : "lambda-shift-B", 1e-10L, opts, tasks));
  }
  return out;
}

IdentityReport laplace_borel(const SuiteOptions& opts) {
  const std::array<Complex, 4> as{Complex(0.0L), Complex(0.3L), Complex(-0.5L),
                                  Complex(0.4L, 0.3L)};
  const std::array<Complex, 3> xs{Complex(0.2L), Complex(0.35L), Complex(-0.3L, 0.1L)};
  std::vector<Task> tasks;
  for (Real q : {0.3L, 0.5L, 0.7L})
    for (Complex a : as)
      for (Complex lam : lambdas(opts, {0.9L, 1.1L, 1.7L}))
        for (Complex x : xs) {
          tasks.push_back(
              {format_params({{"q", q}, {"a", a}, {"lambda", lam}, {"x", x}}), [=, &opts] {
                 const QContext ctx = context(q, opts);
                 const auto f = FormalBilateralSeries::unilateral_phi({a}, {}, ctx);
                 const std::array<Complex, 1> up{a};
                 return Pair{resum(f, config_for(lam), ctx, x).value,
                             eval_unilateral_phi(up, {}, ctx, x).value, {}};
               }});
        }
  return run_tasks("laplace-borel", 1e-10L, opts, tasks);
}

IdentityReport qdiff_residuals(const SuiteOptions& opts) {
  std::vector<Task> tasks;
  const Real q = 0.5L;
  for (Complex x : {Complex(0.4L), Complex(0.2L), Complex(-0.3L), Complex(0.1L, 0.2L)}) {
    tasks.push_back({"eq=heine;" + format_params({{"a", 0.3L}, {"b", 0.7L}, {"c", 0.2L},
                                                  {"q", q}, {"x", x}}),
                     [=, &opts] {
                       const QContext ctx = context(q, opts);
                       const auto eq = QDifferenceEquation::heine(0.3L, 0.7L, 0.2L, ctx);
                       const Real r = qdiff_residual(
                           eq,
                           [&](Complex y) {
                             const std::array<Complex, 2> up{0.3L, 0.7L};
                             const std::array<Complex, 1> lo{0.2L};
                             return eval_unilateral_phi(up, lo, ctx, y).value;
                           },
                           ctx, x);
                       return Pair{r, 0.0L, r};
                     }});
  }
  for (Complex x : {Complex(0.3L), Complex(0.6L), Complex(-0.4L, 0.2L), Complex(1.7L)}) {
    tasks.push_back({"eq=degeneration-A;" + format_params({{"b", 0.2L}, {"q", q}, {"x", x}}),
                     [=, &opts] {
                       const QContext ctx = context(q, opts);
                       const Real r = qdiff_residual(
                           QDifferenceEquation::degeneration_a(0.2L, ctx),
                           [&](Complex y) { return vtilde(0.2L, ctx, y); }, ctx, x);
                       return Pair{r, 0.0L, r};
                     }});
  }
  for (Complex x : {Complex(3.0L), Complex(0.8L), Complex(-2.0L, 1.0L), Complex(7.0L)}) {
    tasks.push_back({"eq=degeneration-B;" + format_params({{"a", 0.6L}, {"q", q}, {"x", x}}),
                     [=, &opts] {
                       const QContext ctx = context(q, opts);
                       const Real r = qdiff_residual(
                           QDifferenceEquation::degeneration_b(0.6L, ctx),
                           [&](Complex y) { return vhat(0.6L, ctx, y); }, ctx, x);
                       return Pair{r, 0.0L, r};
                     }});
  }
  return run_tasks("qdiff-residuals", 1e-10L, opts, tasks);
}

std::vector<IdentityReport> recurrences(const SuiteOptions& opts) {
  const QContext ctx = context(0.5L, opts);
  const Real tol = opts.tol.value_or(1e-14L);
  std::vector<IdentityReport> out;
  out.push_back(formal_recurrence_check(FormalBilateralSeries::one_psi_one(0.0L, 0.2L, ctx),
                                        QDifferenceEquation::degeneration_a(0.2L, ctx), ctx, -40,
                                        40, tol));
  out.push_back(formal_recurrence_check(FormalBilateralSeries::one_psi_zero(0.6L, ctx),
                                        QDifferenceEquation::degeneration_b(0.6L, ctx), ctx, -40,
                                        40, tol));
  out.push_back(formal_recurrence_check(
      FormalBilateralSeries::unilateral_phi({0.3L, 0.7L}, {0.2L}, ctx),
      QDifferenceEquation::heine(0.3L, 0.7L, 0.2L, ctx), ctx, 0, 40, tol));
  out.push_back(formal_recurrence_check(FormalBilateralSeries::one_psi_one(0.8L, 0.2L, ctx),
                                        QDifferenceEquation::one_psi_one(0.8L, 0.2L, ctx), ctx,
                                        -40, 40, tol));
  return out;
}

IdentityReport watson(const SuiteOptions& opts) {
  const Real tol = opts.tol.value_or(1e-8L);
  IdentityReport report;
  report.name = "watson";
  report.tol = tol;
  const QContext ctx = context(0.5L, opts);
  for (Real x : {-0.8L, -0.7L, -0.6L, -0.5L, -0.3L, -0.2L, 0.3L, 0.7L}) {
    try {
      report.append(watson_connection_check(0.9L, 0.85L, 0.1L, ctx, x, tol));
    } catch (const Error& e) {
      report.add_failure(format_params({{"x", x}}),
                         std::string(to_string(e.kind())) + ": " + e.what());
    }
  }
  return report;
}

IdentityReport linear_sum(const SuiteOptions& opts) {
  std::vector<Task> tasks;
  for (Real q : {0.4L, 0.6L, 0.8L}) {
    const std::array<Complex, 4> as{Complex(0.0L), Complex(std::pow(q, 0.4L)), Complex(0.3L),
                                    Complex(-0.6L, 0.2L)};
    for (Complex a : as)
      for (Complex x : {Complex(0.3L), Complex(-0.5L), Complex(0.85L), Complex(0.4L, 0.5L),
                        Complex(-0.2L, -0.7L)}) {
        tasks.push_back({format_params({{"q", q}, {"a", a}, {"x", x}}), [=, &opts] {
                           const IdentityReport r =
                               linear_sum_form_check(a, context(q, opts), x);
                           return Pair{r.points[0].lhs, r.points[0].rhs, {}};
                         }});
      }
  }
  return run_tasks("linear-sum", 1e-10L, opts, tasks);
}

IdentityReport kernels(const SuiteOptions& opts) {
  std::vector<Task> tasks;
  for (Real q : {0.3L, 0.5L, 0.7L}) {
    for (Complex xi : {Complex(0.7L), Complex(0.9L), Complex(-0.6L, 0.5L), Complex(3.0L)}) {
      tasks.push_back({"kernel=A;" + format_params({{"q", q}, {"b", 0.2L}, {"xi", xi}}),
                       [=, &opts] {
                         const QContext ctx = context(q, opts);
                         const std::array<Complex, 1> lo{0.2L};
                         const Complex qc(q);
                         const Complex w = qc * xi / 0.2L;
                         ScaledComplex closed =
                             qpoch_infinite_scaled(qc, ctx) / qpoch_infinite_scaled(0.2L, ctx);
                         closed *= theta_scaled(xi, ctx);
                         closed /= theta_scaled(w, ctx);
                         closed *= q_exponential_product(w, ctx);
                         return Pair{eval_bilateral_psi({}, lo, ctx, -xi).value, closed.value(), {}};
                       }});
    }
    for (Complex xi : {Complex(0.7L), Complex(0.05L), Complex(0.3L, -0.4L), Complex(0.9L)}) {
      tasks.push_back({"kernel=B;" + format_params({{"q", q}, {"a", 0.6L}, {"xi", xi}}),
                       [=, &opts] {
                         const QContext ctx = context(q, opts);
                         const std::array<Complex, 1> up{0.6L};
                         const std::array<Complex, 1> lo{Complex{}};
                         const Complex qc(q);
                         ScaledComplex closed =
                             qpoch_infinite_scaled(qc, ctx) / qpoch_infinite_scaled(qc / 0.6L, ctx);
                         closed *= theta_scaled(0.6L * xi, ctx);
                         closed /= theta_scaled(xi, ctx);
                         closed *= q_exponential_product(qc / xi, ctx);
                         return Pair{eval_bilateral_psi(up, lo, ctx, -xi).value, closed.value(), {}};
                       }});
    }
  }
  return run_tasks("kernels", 1e-10L, opts, tasks);
}

using SuiteFn = std::function<std::vector<IdentityReport>(const SuiteOptions&)>;

template <class F>
SuiteFn single(F f) {
  return [f](const SuiteOptions& o) { return std::vector<IdentityReport>{f(o)}; };
}

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"theta-duality", single(theta_duality)},
      {"theta-functional", single(theta_functional)},
      {"ramanujan", single(ramanujan)},
      {"psi01-closed-form", single(psi01_closed_form)},
      {"kernels", single(kernels)},
      {"pipeline-A", single([](const SuiteOptions& o) { return pipeline(true, o); })},
      {"pipeline-B", single([](const SuiteOptions& o) { return pipeline(false, o); })},
      {"connection", connection},
      {"lambda-shift", lambda_shift},
      {"laplace-borel", single(laplace_borel)},
      {"qdiff-residuals", single(qdiff_residuals)},
      {"recurrences", recurrences},
      {"watson", single(watson)},
      {"linear-sum", single(linear_sum)},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

bool suite_is_randomized(const std::string& name) {
  return name == "ramanujan" || name == "psi01-closed-form";
}

std::vector<IdentityReport> run_suite(const std::string& name, const SuiteOptions& opts) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) return fn(opts);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown identity '" + name + "'");
}

}  // namespace qresum
