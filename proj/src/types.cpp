#include "qresum/types.hpp"

#include <cstdlib>
#include <string>

namespace qresum {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::MaxTermsExceeded: return "MaxTermsExceeded";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Pole: return "Pole";
    case ErrorKind::DivergenceDomain: return "DivergenceDomain";
    case ErrorKind::ParameterPole: return "ParameterPole";
    case ErrorKind::DomainOverlapEmpty: return "DomainOverlapEmpty";
    case ErrorKind::SpiralProximity: return "SpiralProximity";
    case ErrorKind::TailNotConverged: return "TailNotConverged";
    case ErrorKind::BranchCut: return "BranchCut";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::UnknownParameter: return "UnknownParameter";
    case ErrorKind::ArityError: return "ArityError";
  }
  return "Unknown";
}

QContext::QContext(Real q, int max_terms, Real tail_tol, int consecutive_small)
    : q_(q),
      log_q_(0.0L),
      max_terms_(max_terms),
      tail_tol_(tail_tol),
      consecutive_small_(consecutive_small) {
  if (!(q > 0.0L && q < 1.0L)) {
    throw Error(ErrorKind::InvalidArgument, "QContext: q must lie in (0, 1), got " +
                                                std::to_string(static_cast<double>(q)));
  }
  if (max_terms < 1) {
    throw Error(ErrorKind::InvalidArgument, "QContext: max_terms must be >= 1");
  }
  if (!(tail_tol > 0.0L)) {
    throw Error(ErrorKind::InvalidArgument, "QContext: tail_tol must be > 0");
  }
  if (consecutive_small < 1) {
    throw Error(ErrorKind::InvalidArgument, "QContext: consecutive_small must be >= 1");
  }
  log_q_ = std::log(q);
}

int QContext::default_max_terms() {
  if (const char* env = std::getenv("QRESUM_MAX_TERMS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 100000000L) {
      return static_cast<int>(v);
    }
  }
  return kDefaultMaxTerms;
}

ScaledComplex ScaledComplex::from_log(Complex log_value) {
  ScaledComplex out;
  out.mantissa = std::polar(1.0L, log_value.imag());
  out.log_scale = log_value.real();
  return out;
}

void ScaledComplex::normalize() {
  if (mantissa == Complex{}) {
    log_scale = 0.0L;
    return;
  }
  const Real big = std::max(std::abs(mantissa.real()), std::abs(mantissa.imag()));
  if (!std::isfinite(big)) {
    throw Error(ErrorKind::Overflow, "ScaledComplex: non-finite mantissa");
  }
  int exponent = 0;
  std::frexp(big, &exponent);
  if (exponent != 0) {
    mantissa = Complex(std::ldexp(mantissa.real(), -exponent),
                       std::ldexp(mantissa.imag(), -exponent));
    log_scale += static_cast<Real>(exponent) * std::log(2.0L);
  }
}

Real ScaledComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<Real>::infinity();
  return log_scale + std::log(std::abs(mantissa));
}

Complex ScaledComplex::value() const {
  if (is_zero()) return {};
  constexpr Real kMaxLog = 11355.0L;
  if (log_abs() > kMaxLog) {
    throw Error(ErrorKind::Overflow, "value exceeds the representable range");
  }
  return mantissa * std::exp(log_scale);
}

ScaledComplex& ScaledComplex::operator*=(const ScaledComplex& o) {
  mantissa *= o.mantissa;
  log_scale += o.log_scale;
  normalize();
  return *this;
}

ScaledComplex& ScaledComplex::operator/=(const ScaledComplex& o) {
  if (o.is_zero()) {
    throw Error(ErrorKind::DivisionByZero, "ScaledComplex: division by zero");
  }
  mantissa /= o.mantissa;
  log_scale -= o.log_scale;
  normalize();
  return *this;
}

Complex EvalResult::materialize() const {
  if (log_scale == 0.0L) return value;
  return ScaledComplex(value, log_scale).value();
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Complex check_finite(Complex z, const char* where) {
  if (!is_finite(z)) {
    throw Error(ErrorKind::Overflow, std::string(where) + ": non-finite result");
  }
  return z;
}

Real relative_error(Complex computed, Complex reference) {
  const Real ref = std::abs(reference);
  const Real diff = std::abs(computed - reference);
  return ref == 0.0L ? diff : diff / ref;
}

Complex principal_pow(Complex z, Complex w) {
  if (z == Complex{}) {
    if (w.real() > 0.0L) return {};
    throw Error(ErrorKind::DivisionByZero, "principal_pow: 0 to a non-positive power");
  }
  // Signed zero would put arg at -pi; the branch is arg in (-pi, pi].
  if (z.imag() == 0.0L) z = Complex(z.real(), 0.0L);
  return std::exp(w * std::log(z));
}

}  // namespace qresum
