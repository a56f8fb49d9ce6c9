#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace qresum {

/// Working precision. On x86-64 this is the 80-bit extended format, which
/// gives ~19 significant digits and an exponent range up to e^11356.
using Real = long double;
using Complex = std::complex<Real>;

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;

enum class ErrorKind {
  InvalidArgument,
  DivisionByZero,
  MaxTermsExceeded,
  ZeroArgument,
  Overflow,
  Pole,
  DivergenceDomain,
  ParameterPole,
  DomainOverlapEmpty,
  SpiralProximity,
  TailNotConverged,
  BranchCut,
  SyntaxError,
  UnknownFunction,
  UnknownParameter,
  ArityError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Base q and the truncation policy shared by every evaluation.
class QContext {
 public:
  static constexpr int kDefaultMaxTerms = 10000;
  static constexpr Real kDefaultTailTol = 1e-16L;

  explicit QContext(Real q, int max_terms = default_max_terms(),
                    Real tail_tol = kDefaultTailTol, int consecutive_small = 5);

  Real q() const noexcept { return q_; }
  Real log_q() const noexcept { return log_q_; }
  int max_terms() const noexcept { return max_terms_; }
  Real tail_tol() const noexcept { return tail_tol_; }
  int consecutive_small() const noexcept { return consecutive_small_; }

  /// Same policy with a different base; used for the base-q^2 series.
  QContext with_q(Real q) const {
    return QContext(q, max_terms_, tail_tol_, consecutive_small_);
  }
  QContext with_max_terms(int max_terms) const {
    return QContext(q_, max_terms, tail_tol_, consecutive_small_);
  }
  QContext with_tail_tol(Real tail_tol) const {
    return QContext(q_, max_terms_, tail_tol, consecutive_small_);
  }

  /// Term cap default; QRESUM_MAX_TERMS overrides it when set.
  static int default_max_terms();

 private:
  Real q_;
  Real log_q_;
  int max_terms_;
  Real tail_tol_;
  int consecutive_small_;
};

/// A complex number stored as mantissa * exp(log_scale). Used where theta
/// prefactors exceed the floating-point range but their ratios do not.
struct ScaledComplex {
  Complex mantissa{1.0L, 0.0L};
  Real log_scale = 0.0L;

  ScaledComplex() = default;
  ScaledComplex(Complex m, Real s = 0.0L) : mantissa(m), log_scale(s) {
    normalize();
  }

  /// exp(log_value) for a complex logarithm.
  static ScaledComplex from_log(Complex log_value);

  void normalize();
  bool is_zero() const { return mantissa == Complex{}; }
  /// Natural log of the magnitude; -inf for zero.
  Real log_abs() const;
  /// Materialize; throws Overflow when the magnitude is not representable.
  Complex value() const;

  ScaledComplex& operator*=(const ScaledComplex& o);
  ScaledComplex& operator/=(const ScaledComplex& o);
  friend ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) {
    return a *= b;
  }
  friend ScaledComplex operator/(ScaledComplex a, const ScaledComplex& b) {
    return a /= b;
  }
};

/// Outcome of a truncated summation or product. The represented number is
/// value * exp(log_scale); log_scale is zero except for scaled kernels.
struct EvalResult {
  Complex value{};
  Real err_estimate = 0.0L;
  int terms_pos = 0;
  int terms_neg = 0;
  Real log_scale = 0.0L;

  ScaledComplex scaled() const { return ScaledComplex(value, log_scale); }
  Complex materialize() const;
};

bool is_finite(Complex z);
/// Throws Overflow if z has a non-finite component.
Complex check_finite(Complex z, const char* where);

Real relative_error(Complex computed, Complex reference);

/// Principal-branch power z^w, arg z in (-pi, pi].
Complex principal_pow(Complex z, Complex w);

}  // namespace qresum
