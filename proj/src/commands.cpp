#include "qresum/commands.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qresum/expression.hpp"
#include "qresum/suites.hpp"

namespace qresum {

namespace {

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); }

Real parse_real(const std::string& flag, const std::string& text) {
  errno = 0;
  char* end = nullptr;
  const Real v = std::strtold(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v)) {
    usage(flag + ": expected a real number, got '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& flag, const std::string& text) {
  const Real v = parse_real(flag, text);
  if (v != std::floor(v) || std::fabs(v) > 1e9L) {
    usage(flag + ": expected an integer, got '" + text + "'");
  }
  return static_cast<int>(v);
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

class Args {
 public:
  explicit Args(const Call& c) : call_(c) {}

  bool has(const char* key) const { return call_.find(key) != nullptr; }
  Complex complex(const char* key) const { return call_.find(key)->number(); }

  Real real(const char* key) const {
    const Complex v = complex(key);
    if (v.imag() != 0.0L) {
      throw Error(ErrorKind::InvalidArgument,
                  call_.name + "(): parameter '" + key + "' must be real");
    }
    return v.real();
  }

  int integer(const char* key) const {
    const Real v = real(key);
    if (v != std::floor(v) || std::fabs(v) > 1e9L) {
      throw Error(ErrorKind::InvalidArgument,
                  call_.name + "(): parameter '" + key + "' must be an integer");
    }
    return static_cast<int>(v);
  }

  const Call& call() const { return call_; }

 private:
  const Call& call_;
};

QContext context_for(const Args& a, const CommandOptions& opts) {
  const Real q = a.real("q");
  return opts.max_terms > 0 ? QContext(q, opts.max_terms) : QContext(q);
}

LaplaceConfig laplace_for(const Args& a, const CommandOptions& opts) {
  LaplaceConfig cfg;
  if (opts.lambda) cfg.lambda = *opts.lambda;
  if (a.has("lambda")) cfg.lambda = a.complex("lambda");
  if (a.has("window")) cfg.n_window = a.integer("window");
  return cfg;
}

Evaluation from_result(const EvalResult& r) {
  Evaluation e;
  e.value = r.value;
  e.log_scale = r.log_scale;
  e.err_estimate = r.err_estimate;
  e.terms_pos = r.terms_pos;
  e.terms_neg = r.terms_neg;
  e.pass = is_finite(r.value) && std::isfinite(r.log_scale);
  return e;
}

Evaluation from_value(Complex v) {
  EvalResult r;
  r.value = v;
  return from_result(r);
}

Evaluation eval_residual(const Args& a, const CommandOptions& opts) {
  const QContext ctx = context_for(a, opts);
  const Complex x = a.complex("x");
  Real r = 0.0L;
  std::string which;
  if (a.has("c")) {
    const Complex up_a = a.complex("a"), up_b = a.complex("b"), lo_c = a.complex("c");
    which = "heine";
    r = qdiff_residual(QDifferenceEquation::heine(up_a, up_b, lo_c, ctx),
                       [&](Complex y) {
                         const std::array<Complex, 2> up{up_a, up_b};
                         const std::array<Complex, 1> lo{lo_c};
                         return eval_unilateral_phi(up, lo, ctx, y).value;
                       },
                       ctx, x);
  } else if (a.has("b")) {
    const Complex b = a.complex("b");
    which = "degeneration-A";
    r = qdiff_residual(QDifferenceEquation::degeneration_a(b, ctx),
                       [&](Complex y) { return vtilde(b, ctx, y); }, ctx, x);
  } else {
    const Complex ap = a.complex("a");
    which = "degeneration-B";
    r = qdiff_residual(QDifferenceEquation::degeneration_b(ap, ctx),
                       [&](Complex y) { return vhat(ap, ctx, y); }, ctx, x);
  }
  Evaluation e = from_value(r);
  e.pass = std::isfinite(r) && r < opts.tol.value_or(1e-10L);
  e.note = "scale-free residual of " + which;
  return e;
}

LimitReport eval_scan(const Args& outer, const CommandOptions& opts) {
  const int kmin = outer.has("kmin") ? outer.integer("kmin") : 4;
  const int kmax = outer.has("kmax") ? outer.integer("kmax") : 10;
  const LimitSchedule sched = LimitSchedule::powers_of_two(kmin, kmax);
  sched.validate();
  LaplaceConfig cfg;
  if (opts.lambda) cfg.lambda = *opts.lambda;
  if (outer.has("lambda")) cfg.lambda = outer.complex("lambda");

  const Call& target = outer.call().find("of")->call();
  const Args a(target);
  const int jobs = opts.jobs;
  if (target.name == "resumA") return limit_theorem_A(a.real("beta"), a.complex("x"), cfg, sched, jobs);
  if (target.name == "resumB") return limit_theorem_B(a.real("alpha"), a.complex("x"), cfg, sched, jobs);
  if (target.name == "qpoch") return limit_qpoch_ratio(a.real("alpha"), a.complex("z"), sched, jobs);
  if (target.name == "theta") {
    const ThetaLimitForm form = a.has("scaled") && a.complex("scaled") != Complex{}
                                    ? ThetaLimitForm::Scaled
                                    : ThetaLimitForm::Ratio;
    return limit_theta_ratio(a.real("alpha"), a.real("beta"), a.complex("z"), sched, form, jobs);
  }
  // phi
  if (a.has("alpha")) return limit_linear_sum(a.real("alpha"), a.complex("x"), sched, jobs);
  return limit_linear_sum_zero(a.complex("x"), sched, jobs);
}

Report run_eval(const CommandOptions& opts) {
  const Call call = parse(opts.subject);
  Report report;
  report.command = "eval";
  report.subject = pretty_print(call);
  const Args a(call);
  const std::string& f = call.name;

  if (f == "limit-scan") {
    report.limits.push_back(eval_scan(a, opts));
    return report;
  }

  Evaluation e;
  if (f == "eq") {
    e = eval_residual(a, opts);
  } else {
    const QContext ctx = context_for(a, opts);
    if (f == "theta") {
      e = from_result(theta(a.complex("z"), ctx));
    } else if (f == "qpoch") {
      e = a.has("n") ? from_value(qpoch_finite(a.complex("a"), ctx, a.integer("n")))
                     : from_result(qpoch_infinite(a.complex("a"), ctx));
    } else if (f == "psi") {
      const std::array<Complex, 1> up{a.complex("a")};
      const std::array<Complex, 1> lo{a.complex("b")};
      e = from_result(eval_bilateral_psi(up, lo, ctx, a.complex("z")));
    } else if (f == "phi") {
      if (a.has("b")) {
        const std::array<Complex, 2> up{a.complex("a"), a.complex("b")};
        const std::array<Complex, 1> lo{a.complex("c")};
        e = from_result(eval_unilateral_phi(up, lo, ctx, a.complex("z")));
      } else {
        const std::array<Complex, 1> up{a.complex("a")};
        e = from_result(eval_unilateral_phi(up, {}, ctx, a.complex("z")));
      }
    } else if (f == "resumA") {
      e = from_result(resum_psiA(a.complex("b"), laplace_for(a, opts), ctx, a.complex("x")));
    } else if (f == "resumB") {
      e = from_result(resum_psiB(a.complex("a"), laplace_for(a, opts), ctx, a.complex("x")));
    } else if (f == "connA") {
      e = from_value(connection_coeff(ConnectionVariant::A, a.complex("b"), laplace_for(a, opts),
                                      ctx)(a.complex("x")));
    } else if (f == "connB") {
      e = from_value(connection_coeff(ConnectionVariant::B, a.complex("a"), laplace_for(a, opts),
                                      ctx)(a.complex("x")));
    } else if (f == "gammaq") {
      e = from_result(q_gamma(a.complex("z"), ctx));
    } else {
      throw Error(ErrorKind::UnknownFunction, "no evaluator for '" + f + "'");
    }
  }
  e.expression = report.subject;
  report.evaluations.push_back(std::move(e));
  return report;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

Report run_verify(const CommandOptions& opts) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), opts.subject) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    usage("unknown identity '" + opts.subject + "'; expected one of " + list);
  }
  SuiteOptions so;
  so.jobs = opts.jobs;
  so.tol = opts.tol;
  so.max_terms = opts.max_terms;
  so.lambda = opts.lambda;
  if (opts.grid != "default") {
    // random:N[:seed]
    const std::string prefix = "random:";
    if (opts.grid.rfind(prefix, 0) != 0) {
      usage("--grid: expected 'default' or 'random:N[:seed]', got '" + opts.grid + "'");
    }
    if (!suite_is_randomized(opts.subject)) {
      usage("--grid: identity '" + opts.subject + "' has a fixed grid");
    }
    const std::string rest = opts.grid.substr(prefix.size());
    const std::size_t colon = rest.find(':');
    so.samples = parse_int("--grid", rest.substr(0, colon));
    if (so.samples < 1) usage("--grid: the sample count must be positive");
    if (colon != std::string::npos) {
      const int seed = parse_int("--grid", rest.substr(colon + 1));
      if (seed < 0) usage("--grid: the seed must be non-negative");
      so.seed = static_cast<std::uint64_t>(seed);
    }
  }
  Report report;
  report.command = "verify";
  report.subject = opts.subject;
  report.identities = run_suite(opts.subject, so);
  return report;
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

LimitSchedule schedule_from(const std::string& text) {
  LimitSchedule s;
  if (text == "default") {
    s = LimitSchedule::powers_of_two();
  } else if (text.rfind("k=", 0) == 0) {
    const std::string body = text.substr(2);
    const std::size_t dots = body.find("..");
    if (dots == std::string::npos) usage("--schedule: expected k=a..b, got '" + text + "'");
    s = LimitSchedule::powers_of_two(parse_int("--schedule", body.substr(0, dots)),
                                     parse_int("--schedule", body.substr(dots + 2)));
  } else if (text.rfind("q=", 0) == 0) {
    std::stringstream in(text.substr(2));
    std::string item;
    while (std::getline(in, item, ',')) s.q_values.push_back(parse_real("--schedule", item));
  } else {
    usage("--schedule: expected 'default', 'k=a..b' or 'q=v1,v2,...', got '" + text + "'");
  }
  s.validate();
  return s;
}

template <class T>
T require(const std::optional<T>& v, const char* flag, const std::string& scan) {
  if (!v) usage("scan " + scan + " requires " + flag);
  return *v;
}

Report run_scan(const CommandOptions& opts) {
  const std::string& n = opts.subject;
  const auto& names = scan_names();
  if (std::find(names.begin(), names.end(), n) == names.end()) {
    std::string list;
    for (const auto& s : names) list += (list.empty() ? "" : ", ") + s;
    usage("unknown limit '" + n + "'; expected one of " + list);
  }
  if (opts.tol) usage("--tol does not apply to scan");
  if (opts.max_terms > 0) usage("--max-terms does not apply to scan");
  if (opts.lambda && n != "limitA" && n != "limitB") usage("--lambda applies to limitA and limitB only");

  const LimitSchedule sched = schedule_from(opts.schedule);
  LaplaceConfig cfg;
  if (opts.lambda) cfg.lambda = *opts.lambda;
  const int jobs = opts.jobs;

  Report report;
  report.command = "scan";
  report.subject = n;
  LimitReport l;
  if (n == "limitA") {
    l = limit_theorem_A(require(opts.beta, "--beta", n), require(opts.x, "--x", n), cfg, sched, jobs);
  } else if (n == "limitB") {
    l = limit_theorem_B(require(opts.alpha, "--alpha", n), require(opts.x, "--x", n), cfg, sched,
                        jobs);
  } else if (n == "theta-ratio" || n == "theta-scaled") {
    l = limit_theta_ratio(require(opts.alpha, "--alpha", n), require(opts.beta, "--beta", n),
                          require(opts.z, "--z", n), sched,
                          n == "theta-ratio" ? ThetaLimitForm::Ratio : ThetaLimitForm::Scaled, jobs);
  } else if (n == "qpoch-ratio") {
    l = limit_qpoch_ratio(require(opts.alpha, "--alpha", n), require(opts.z, "--z", n), sched, jobs);
  } else if (n == "linear-sum") {
    l = limit_linear_sum(require(opts.alpha, "--alpha", n), require(opts.x, "--x", n), sched, jobs);
  } else {
    l = limit_linear_sum_zero(require(opts.x, "--x", n), sched, jobs);
  }
  report.limits.push_back(std::move(l));
  return report;
}

void print_error(const Error& e, const CommandOptions* opts, std::ostream& err) {
  err << "qresum: " << to_string(e.kind()) << ": " << e.what() << '\n';
  const auto* pe = dynamic_cast<const ParseError*>(&e);
  if (pe == nullptr || opts == nullptr) return;
  // Echo the offending line with a caret under the column.
  std::stringstream in(opts->subject);
  std::string line;
  for (int i = 0; i < pe->pos().line && std::getline(in, line); ++i) {
  }
  err << "  " << line << '\n' << "  " << std::string(pe->pos().column - 1, ' ') << "^\n";
}

}  // namespace

const std::vector<std::string>& scan_names() {
  static const std::vector<std::string> names = {
      "limitA",      "limitB",     "theta-ratio",    "theta-scaled",
      "qpoch-ratio", "linear-sum", "linear-sum-zero"};
  return names;
}

Report run_command(const CommandOptions& opts) {
  if (opts.jobs < 1) usage("--jobs must be at least 1");
  if (opts.max_terms < 0) usage("--max-terms must be positive");
  if (opts.tol && !(*opts.tol > 0.0L)) usage("--tol must be positive");
  switch (opts.command) {
    case Command::Eval: return run_eval(opts);
    case Command::Verify: return run_verify(opts);
    case Command::Scan: return run_scan(opts);
  }
  usage("unknown command");
}

int exit_code(const Report& report) { return report.passed() ? kExitPass : kExitFailure; }

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-Borel-Laplace resummation: evaluate, verify identities, scan q -> 1 limits",
               "qresum"};
  app.require_subcommand(1);
  app.footer("identities: " + [] {
    std::string s;
    for (const auto& n : suite_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }() + "\nlimits: " + [] {
    std::string s;
    for (const auto& n : scan_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }());

  std::string subject, tol, max_terms, lambda, format = "json", out_path, jobs = "1";
  std::string grid = "default", schedule = "default", alpha, beta, x, z;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "relative tolerance (default: per identity, 1e-10 for eq)");
    sub->add_option("--max-terms", max_terms, "term cap for every series and product");
    sub->add_option("--lambda", lambda, "Laplace base point (default 1.1)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--jobs", jobs, "worker threads");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate one expression");
  eval->add_option("expression", subject, "e.g. \"theta(q=0.5, z=1.2+0.3i)\"")->required();
  common(eval);

  CLI::App* verify = app.add_subcommand("verify", "check an identity over its grid");
  verify->add_option("identity", subject, "identity suite")->required();
  verify->add_option("--grid", grid, "default or random:N[:seed]");
  common(verify);

  CLI::App* scan = app.add_subcommand("scan", "run a q -> 1 limit scan");
  scan->add_option("limit", subject, "limit name")->required();
  scan->add_option("--schedule", schedule, "default, k=a..b or q=v1,v2,...");
  scan->add_option("--alpha", alpha, "exponent alpha");
  scan->add_option("--beta", beta, "exponent beta");
  scan->add_option("--x", x, "argument x (complex)");
  scan->add_option("--z", z, "argument z (complex)");
  common(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  CommandOptions opts;
  try {
    opts.command = verify->parsed() ? Command::Verify
                   : scan->parsed() ? Command::Scan
                                    : Command::Eval;
    opts.subject = subject;
    if (!tol.empty()) opts.tol = parse_real("--tol", tol);
    if (!max_terms.empty()) opts.max_terms = parse_int("--max-terms", max_terms);
    if (!max_terms.empty() && opts.max_terms < 1) usage("--max-terms must be positive");
    if (!lambda.empty()) opts.lambda = parse_complex_literal(lambda);
    opts.jobs = parse_int("--jobs", jobs);
    opts.grid = grid;
    opts.schedule = schedule;
    if (!alpha.empty()) opts.alpha = parse_real("--alpha", alpha);
    if (!beta.empty()) opts.beta = parse_real("--beta", beta);
    if (!x.empty()) opts.x = parse_complex_literal(x);
    if (!z.empty()) opts.z = parse_complex_literal(z);
  } catch (const Error& e) {
    print_error(e, nullptr, err);
    return kExitUsage;
  }

  Report report;
  try {
    report = run_command(opts);
  } catch (const Error& e) {
    print_error(e, opts.command == Command::Eval ? &opts : nullptr, err);
    return kExitUsage;
  }

  const std::string text = format == "csv" ? to_csv(report) : to_json(report) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f || !(f << text)) {
      err << "qresum: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
  }
  return exit_code(report);
}

}  // namespace qresum
