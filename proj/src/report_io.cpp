#include "qresum/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace qresum {

using Json = nlohmann::ordered_json;

bool Report::passed() const {
  for (const auto& r : identities)
    if (!r.passed()) return false;
  for (const auto& l : limits)
    if (!l.passed()) return false;
  for (const auto& e : evaluations)
    if (!e.pass) return false;
  return true;
}

namespace {

// Reals travel as doubles; the cast is the single rounding step.
Json real_to_json(Real v) {
  const double d = static_cast<double>(v);
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  return d;
}

Real real_from_json(const Json& j) {
  if (j.is_number()) return static_cast<Real>(j.get<double>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<Real>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<Real>::infinity();
    if (s == "-inf") return -std::numeric_limits<Real>::infinity();
  }
  throw Error(ErrorKind::InvalidArgument, "report: expected a real, found " + j.dump());
}

Json complex_to_json(Complex z) { return Json{{"re", real_to_json(z.real())}, {"im", real_to_json(z.imag())}}; }

Complex complex_from_json(const Json& j) {
  return {real_from_json(j.at("re")), real_from_json(j.at("im"))};
}

template <class T, class F>
Json array_of(const std::vector<T>& xs, F f) {
  Json out = Json::array();
  for (const T& x : xs) out.push_back(f(x));
  return out;
}

template <class T, class F>
std::vector<T> vector_of(const Json& j, F f) {
  std::vector<T> out;
  for (const Json& x : j) out.push_back(f(x));
  return out;
}

Json identity_to_json(const IdentityReport& r) {
  Json points = Json::array();
  for (const IdentityPoint& p : r.points) {
    points.push_back({{"params", p.params},
                      {"lhs", complex_to_json(p.lhs)},
                      {"rhs", complex_to_json(p.rhs)},
                      {"rel_err", real_to_json(p.rel_err)},
                      {"pass", p.pass},
                      {"error", p.error}});
  }
  return {{"name", r.name},
          {"tol", real_to_json(r.tol)},
          {"max_err", real_to_json(r.max_err())},
          {"passed", r.passed()},
          {"points", std::move(points)}};
}

IdentityReport identity_from_json(const Json& j) {
  IdentityReport r;
  r.name = j.at("name").get<std::string>();
  r.tol = real_from_json(j.at("tol"));
  for (const Json& p : j.at("points")) {
    IdentityPoint pt;
    pt.params = p.at("params").get<std::string>();
    pt.lhs = complex_from_json(p.at("lhs"));
    pt.rhs = complex_from_json(p.at("rhs"));
    pt.rel_err = real_from_json(p.at("rel_err"));
    pt.pass = p.at("pass").get<bool>();
    pt.error = p.at("error").get<std::string>();
    r.points.push_back(std::move(pt));
  }
  return r;
}

Json limit_to_json(const LimitReport& l) {
  return {{"name", l.name},
          {"params", l.params},
          {"target", complex_to_json(l.target)},
          {"q_values", array_of(l.q_values, real_to_json)},
          {"values", array_of(l.values, complex_to_json)},
          {"rel_errors", array_of(l.rel_errors, real_to_json)},
          {"identity_errors", array_of(l.identity_errors, real_to_json)},
          {"classical_identity_error", real_to_json(l.classical_identity_error)},
          {"monotone", l.monotone},
          {"has_extrapolation", l.has_extrapolation},
          {"extrapolated", complex_to_json(l.extrapolated)},
          {"extrapolated_error", real_to_json(l.extrapolated_error)},
          {"final_error", real_to_json(l.final_error())},
          {"passed", l.passed()}};
}

LimitReport limit_from_json(const Json& j) {
  LimitReport l;
  l.name = j.at("name").get<std::string>();
  l.params = j.at("params").get<std::string>();
  l.target = complex_from_json(j.at("target"));
  l.q_values = vector_of<Real>(j.at("q_values"), real_from_json);
  l.values = vector_of<Complex>(j.at("values"), complex_from_json);
  l.rel_errors = vector_of<Real>(j.at("rel_errors"), real_from_json);
  l.identity_errors = vector_of<Real>(j.at("identity_errors"), real_from_json);
  l.classical_identity_error = real_from_json(j.at("classical_identity_error"));
  l.monotone = j.at("monotone").get<bool>();
  l.has_extrapolation = j.at("has_extrapolation").get<bool>();
  l.extrapolated = complex_from_json(j.at("extrapolated"));
  l.extrapolated_error = real_from_json(j.at("extrapolated_error"));
  return l;
}

Json evaluation_to_json(const Evaluation& e) {
  return {{"expression", e.expression},
          {"value", complex_to_json(e.value)},
          {"log_scale", real_to_json(e.log_scale)},
          {"err_estimate", real_to_json(e.err_estimate)},
          {"terms_pos", e.terms_pos},
          {"terms_neg", e.terms_neg},
          {"pass", e.pass},
          {"note", e.note}};
}

Evaluation evaluation_from_json(const Json& j) {
  Evaluation e;
  e.expression = j.at("expression").get<std::string>();
  e.value = complex_from_json(j.at("value"));
  e.log_scale = real_from_json(j.at("log_scale"));
  e.err_estimate = real_from_json(j.at("err_estimate"));
  e.terms_pos = j.at("terms_pos").get<int>();
  e.terms_neg = j.at("terms_neg").get<int>();
  e.pass = j.at("pass").get<bool>();
  e.note = j.at("note").get<std::string>();
  return e;
}

// Same-value comparison that treats NaN as equal to NaN.
bool same(Real a, Real b) { return a == b || (std::isnan(a) && std::isnan(b)); }
bool same(Complex a, Complex b) { return same(a.real(), b.real()) && same(a.imag(), b.imag()); }

template <class T>
bool same_vec(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i], b[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

void write_row(std::ostringstream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

// "k=v;k=v" into ordered pairs.
std::vector<std::pair<std::string, std::string>> split_params(const std::string& params) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  while (start < params.size()) {
    std::size_t end = params.find(';', start);
    if (end == std::string::npos) end = params.size();
    const std::string item = params.substr(start, end - start);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      out.emplace_back(item, "");
    } else {
      out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    start = end + 1;
  }
  return out;
}

void identities_csv(std::ostringstream& out, const std::vector<IdentityReport>& reports) {
  std::vector<std::string> keys;
  for (const auto& r : reports) {
    for (const auto& p : r.points) {
      for (const auto& [k, v] : split_params(p.params)) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
      }
    }
  }
  std::vector<std::string> header = {"identity"};
  header.insert(header.end(), keys.begin(), keys.end());
  for (const char* h : {"lhs", "rhs", "rel_err", "pass"}) header.emplace_back(h);
  write_row(out, header);
  for (const auto& r : reports) {
    for (const auto& p : r.points) {
      std::vector<std::string> row = {r.name};
      const auto kv = split_params(p.params);
      for (const std::string& k : keys) {
        std::string v;
        for (const auto& [pk, pv] : kv)
          if (pk == k) v = pv;
        row.push_back(v);
      }
      const bool ok = p.error.empty();
      row.push_back(ok ? format_complex(p.lhs) : "");
      row.push_back(ok ? format_complex(p.rhs) : "");
      row.push_back(ok ? csv_real(p.rel_err) : "");
      row.push_back(p.pass ? "true" : "false");
      write_row(out, row);
    }
  }
}

void limits_csv(std::ostringstream& out, const std::vector<LimitReport>& limits) {
  write_row(out, {"limit", "params", "q", "value", "target", "rel_err", "identity_err", "pass"});
  for (const auto& l : limits) {
    const std::string pass = l.passed() ? "true" : "false";
    for (std::size_t i = 0; i < l.q_values.size(); ++i) {
      write_row(out, {l.name, l.params, csv_real(l.q_values[i]), format_complex(l.values[i]),
                      format_complex(l.target), csv_real(l.rel_errors[i]),
                      i < l.identity_errors.size() ? csv_real(l.identity_errors[i]) : "", pass});
    }
    if (l.has_extrapolation) {
      write_row(out, {l.name, l.params, "extrapolated", format_complex(l.extrapolated),
                      format_complex(l.target), csv_real(l.extrapolated_error), "", pass});
    }
  }
}

void evaluations_csv(std::ostringstream& out, const std::vector<Evaluation>& evals) {
  write_row(out, {"expression", "value", "log_scale", "err_estimate", "terms_pos", "terms_neg",
                  "pass"});
  for (const auto& e : evals) {
    write_row(out, {e.expression, format_complex(e.value), csv_real(e.log_scale),
                    csv_real(e.err_estimate), std::to_string(e.terms_pos),
                    std::to_string(e.terms_neg), e.pass ? "true" : "false"});
  }
}

}  // namespace

std::string to_json(const Report& report, int indent) {
  const Json j = {{"schema", report.schema},
                  {"command", report.command},
                  {"subject", report.subject},
                  {"passed", report.passed()},
                  {"identities", array_of(report.identities, identity_to_json)},
                  {"limits", array_of(report.limits, limit_to_json)},
                  {"evaluations", array_of(report.evaluations, evaluation_to_json)}};
  return j.dump(indent);
}

Report parse_report_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    Report r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kReportSchema) {
      throw Error(ErrorKind::InvalidArgument, "report: unsupported schema '" + r.schema + "'");
    }
    r.command = j.at("command").get<std::string>();
    r.subject = j.at("subject").get<std::string>();
    r.identities = vector_of<IdentityReport>(j.at("identities"), identity_from_json);
    r.limits = vector_of<LimitReport>(j.at("limits"), limit_from_json);
    r.evaluations = vector_of<Evaluation>(j.at("evaluations"), evaluation_from_json);
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("report: ") + e.what());
  }
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  bool first = true;
  auto section = [&](bool nonempty, auto writer) {
    if (!nonempty) return;
    if (!first) out << '\n';
    first = false;
    writer();
  };
  section(!report.identities.empty(), [&] { identities_csv(out, report.identities); });
  section(!report.limits.empty(), [&] { limits_csv(out, report.limits); });
  section(!report.evaluations.empty(), [&] { evaluations_csv(out, report.evaluations); });
  return out.str();
}

bool operator==(const IdentityPoint& a, const IdentityPoint& b) {
  return a.params == b.params && same(a.lhs, b.lhs) && same(a.rhs, b.rhs) &&
         same(a.rel_err, b.rel_err) && a.pass == b.pass && a.error == b.error;
}

bool operator==(const IdentityReport& a, const IdentityReport& b) {
  return a.name == b.name && same(a.tol, b.tol) && a.points == b.points;
}

bool operator==(const LimitReport& a, const LimitReport& b) {
  return a.name == b.name && a.params == b.params && same(a.target, b.target) &&
         same_vec(a.q_values, b.q_values) && same_vec(a.values, b.values) &&
         same_vec(a.rel_errors, b.rel_errors) && same_vec(a.identity_errors, b.identity_errors) &&
         same(a.classical_identity_error, b.classical_identity_error) &&
         a.monotone == b.monotone && a.has_extrapolation == b.has_extrapolation &&
         same(a.extrapolated, b.extrapolated) && same(a.extrapolated_error, b.extrapolated_error);
}

bool operator==(const Evaluation& a, const Evaluation& b) {
  return a.expression == b.expression && same(a.value, b.value) &&
         same(a.log_scale, b.log_scale) && same(a.err_estimate, b.err_estimate) &&
         a.terms_pos == b.terms_pos && a.terms_neg == b.terms_neg && a.pass == b.pass &&
         a.note == b.note;
}

bool operator==(const Report& a, const Report& b) {
  return a.schema == b.schema && a.command == b.command && a.subject == b.subject &&
         a.identities == b.identities && a.limits == b.limits && a.evaluations == b.evaluations;
}

}  // namespace qresum
