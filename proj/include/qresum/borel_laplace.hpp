#pragma once

#include <functional>

#include "qresum/series.hpp"

namespace qresum {

/// Parameters of the Jackson sum sum_n phi(lambda q^n) / theta(lambda q^n / x).
struct LaplaceConfig {
  Complex lambda{1.1L, 0.0L};
  int n_window = 60;  // cap on |n|; each tail stops early once certified
  Real spiral_guard = kSpiralGuard;

  /// Throws InvalidArgument when lambda is near q^Z, n_window < 1 or
  /// n_window exceeds the context's term cap.
  void validate(const QContext& ctx) const;
};

/// a_n -> a_n q^{n(n-1)/2} for every n in the window. Named families map
/// to named families:
///   1psi1(0;b; s xi) -> 0psi1(-;b; -s xi)
///   1psi0(a;-; s xi) -> 1psi1(a;0; -s xi)
FormalBilateralSeries qborel_plus(const FormalBilateralSeries& s, const QContext& ctx);

/// A Borel-plane function. Results may carry a log_scale.
using Kernel = std::function<EvalResult(Complex)>;

/// Jackson sum of phi against 1/theta(lambda q^n / x), both tails
/// certified. Each denominator is theta(lambda/x) times the exact factor
/// (lambda/x)^{-n} q^{-n(n-1)/2}, applied in log space.
EvalResult qlaplace_plus(const Kernel& phi, const LaplaceConfig& cfg, const QContext& ctx,
                         Complex x);

/// psi_A(xi) = 0psi1(-;b;q,-xi). Summed as a series for 2|b| <= |xi| <= 1e4,
/// otherwise from (q;q)/(b;q) * theta(xi)/theta(q xi/b) * E_q(q xi/b).
EvalResult kernel_psiA(Complex b, const QContext& ctx, Complex xi);
/// psi_B(xi) = 1psi1(a;0;q,-xi). Summed as a series for 1e-4 <= |xi| <= 1/2,
/// otherwise from (q;q)/(q/a;q) * theta(a xi)/theta(xi) * E_q(q/xi).
EvalResult kernel_psiB(Complex a, const QContext& ctx, Complex xi);

/// Laplace of a Borel transform. Named families use the kernels above;
/// anything else is summed from its Borel coefficients.
EvalResult resum(const FormalBilateralSeries& s, const LaplaceConfig& cfg, const QContext& ctx,
                 Complex x);

/// Laplace of psi_A and psi_B directly.
EvalResult resum_psiA(Complex b, const LaplaceConfig& cfg, const QContext& ctx, Complex x);
EvalResult resum_psiB(Complex a, const LaplaceConfig& cfg, const QContext& ctx, Complex x);

/// 1phi0(0;-;q,y) = 1/(y;q)_inf, valid for every y off q^{-N}.
ScaledComplex phi10_zero(Complex y, const QContext& ctx);

/// (q;q)/(b;q) * theta(lambda) theta(lambda q/(b x)) / (theta(q lambda/b) theta(lambda/x))
///   * 1phi0(0;-;q,x)
EvalResult closedform_psiA(Complex b, const LaplaceConfig& cfg, const QContext& ctx, Complex x);
ScaledComplex closedform_psiA_scaled(Complex b, const LaplaceConfig& cfg, const QContext& ctx,
                                     Complex x);
/// (q;q)/(q/a;q) * theta(a lambda) theta(a q x/lambda) / (theta(lambda) theta(q x/lambda))
///   * 1phi0(0;-;q,1/(a x))
EvalResult closedform_psiB(Complex a, const LaplaceConfig& cfg, const QContext& ctx, Complex x);
ScaledComplex closedform_psiB_scaled(Complex a, const LaplaceConfig& cfg, const QContext& ctx,
                                     Complex x);

/// Solutions of the degenerate equations.
/// v~(x) = theta(bx)/theta(qx) * 1phi0(0;-;q,x)
Complex vtilde(Complex b, const QContext& ctx, Complex x);
/// v^(x) = theta(ax)/theta(x) * 1phi0(0;-;q,1/(ax))
Complex vhat(Complex a, const QContext& ctx, Complex x);

enum class ConnectionVariant { A, B };

/// The q-periodic factor C with psi~ = C * v. Immutable.
class ConnectionCoefficient {
 public:
  ConnectionCoefficient(ConnectionVariant variant, Complex param, LaplaceConfig cfg,
                        QContext ctx);

  Complex evaluate(Complex x) const;
  Complex operator()(Complex x) const { return evaluate(x); }

  ConnectionVariant variant() const { return variant_; }
  Complex param() const { return param_; }

 private:
  ConnectionVariant variant_;
  Complex param_;
  LaplaceConfig cfg_;
  QContext ctx_;
};

/// Variant A takes b, variant B takes a.
ConnectionCoefficient connection_coeff(ConnectionVariant variant, Complex param,
                                       const LaplaceConfig& cfg, const QContext& ctx);

}  // namespace qresum
