#pragma once

#include <string>
#include <vector>

#include "qresum/borel_laplace.hpp"

namespace qresum {

enum class Extrapolation { None, Richardson1 };

/// A finite approach q -> 1-.
struct LimitSchedule {
  std::vector<Real> q_values;
  Extrapolation extrapolation = Extrapolation::Richardson1;

  /// q_k = 1 - 2^{-k}, k = k_lo..k_hi.
  static LimitSchedule powers_of_two(int k_lo = 4, int k_hi = 10);
  /// Throws InvalidArgument unless q_values is strictly increasing in (0,1)
  /// with at least two entries.
  void validate() const;
};

/// Scans whose exact error vanishes would otherwise trip the strict
/// monotonicity test on rounding noise; errors at or below this floor count
/// as converged.
inline constexpr Real kLimitNoiseFloor = 1e-13L;
/// Term cap for scans: (q;q)_inf at q = 1 - 2^{-10} needs ~4.4e4 factors.
inline constexpr int kLimitMaxTerms = 50000;

struct LimitReport {
  std::string name;
  std::string params;
  Complex target{};
  std::vector<Real> q_values;
  std::vector<Complex> values;
  std::vector<Real> rel_errors;
  /// Per-q error of an exact finite-q identity the scan relies on; empty
  /// when there is none.
  std::vector<Real> identity_errors;
  /// Error of the classical identity the limit is meant to produce, if any.
  Real classical_identity_error = 0.0L;
  bool monotone = false;
  bool has_extrapolation = false;
  Complex extrapolated{};
  Real extrapolated_error = 0.0L;

  Real final_error() const { return rel_errors.empty() ? 0.0L : rel_errors.back(); }
  /// monotone, final error below final_tol, extrapolated error below
  /// extrapolated_tol and every identity error below identity_tol.
  bool passed(Real final_tol = 5e-2L, Real extrapolated_tol = 1e-2L,
              Real identity_tol = 1e-10L) const;
};

/// Builds a report from per-q values; fills errors, monotonicity and the
/// first-order Richardson value in h = 1 - q from the last two points.
LimitReport make_limit_report(std::string name, std::string params, Complex target,
                              const LimitSchedule& sched, std::vector<Complex> values);

enum class ThetaLimitForm {
  /// theta(q^beta z)/theta(q^alpha z) -> z^{alpha-beta}
  Ratio,
  /// theta(q^alpha z/(1-q))/theta(q^beta z/(1-q)) (1-q)^{beta-alpha} -> z^{beta-alpha}
  Scaled,
};

LimitReport limit_theta_ratio(Real alpha, Real beta, Complex z, const LimitSchedule& sched,
                              ThetaLimitForm form = ThetaLimitForm::Ratio, int jobs = 1);

/// (z q^alpha;q)_inf / (z;q)_inf -> (1-z)^{-alpha}, |z| < 1.
LimitReport limit_qpoch_ratio(Real alpha, Complex z, const LimitSchedule& sched, int jobs = 1);

/// Relative error of the even/odd split of 1phi0(a;-;q,x) into two base-q^2
/// 2phi1 series (a = 0 included). Needs |x| < 1.
IdentityReport linear_sum_form_check(Complex a, const QContext& ctx, Complex x);

/// a = q^alpha in the split: scans the right side towards
/// 2F1(alpha/2, alpha/2+1/2; 1/2; x^2) + alpha x 2F1(alpha/2+1/2, alpha/2+1; 3/2; x^2).
/// classical_identity_error compares that target with (1-x)^{-alpha}.
LimitReport limit_linear_sum(Real alpha, Complex x, const LimitSchedule& sched, int jobs = 1);

/// a = 0 with x -> (1-q^2) x: scans towards 0F1(-;1/2;x^2) + 2x 0F1(-;3/2;x^2);
/// classical_identity_error compares that target with e^{2x}.
LimitReport limit_linear_sum_zero(Complex x, const LimitSchedule& sched, int jobs = 1);

/// psi~_A((1-q) x) with b = q^beta towards Gamma(beta) x^{1-beta} e^x.
LimitReport limit_theorem_A(Real beta, Complex x, const LaplaceConfig& cfg,
                            const LimitSchedule& sched, int jobs = 1);

/// psi~_B(x/(1-q)) with a = q^alpha towards Gamma(1-alpha) x^{-alpha} e^{1/x}.
LimitReport limit_theorem_B(Real alpha, Complex x, const LaplaceConfig& cfg,
                            const LimitSchedule& sched, int jobs = 1);

}  // namespace qresum
