#pragma once

#include <span>

#include "qresum/types.hpp"

namespace qresum {

// ---------------------------------------------------------------------------
// q-shifted factorials
// ---------------------------------------------------------------------------

/// (a;q)_n for any integer n. For n <= -1 this is the reciprocal product
/// 1 / [(1 - a/q)(1 - a/q^2)...(1 - a q^n)]; a vanishing factor there
/// throws DivisionByZero.
Complex qpoch_finite(Complex a, const QContext& ctx, int n);

/// (a;q)_inf. Truncated once |a q^k| has stayed below tail_tol for
/// consecutive_small factors and the geometric tail sum |a| q^K / (1 - q)
/// is itself below tail_tol.
EvalResult qpoch_infinite(Complex a, const QContext& ctx);

/// Same product, accumulated with an explicit exponent so that products
/// like (q;q)_inf at q -> 1 or (-w;q)_inf at |w| >> 1 never leave range.
ScaledComplex qpoch_infinite_scaled(Complex a, const QContext& ctx);

/// (a_1, ..., a_m; q)_inf
ScaledComplex qpoch_infinite_scaled(std::span<const Complex> as,
                                    const QContext& ctx);

// ---------------------------------------------------------------------------
// Jacobi theta
// ---------------------------------------------------------------------------

/// theta_q(z) = sum_{n in Z} q^{n(n-1)/2} z^n.
///
/// The argument is first moved into sqrt(q) <= |z| < 1/sqrt(q) with
/// theta(z q^k) = z^{-k} q^{-k(k-1)/2} theta(z); the bilateral sum is then
/// taken tail by tail. err_estimate is relative to the magnitude of the
/// summed terms, so it stays meaningful at the zeros z = -q^k.
EvalResult theta(Complex z, const QContext& ctx);

/// Theta with the reduction prefactor kept in log form. `err` receives the
/// relative truncation estimate when non-null.
ScaledComplex theta_scaled(Complex z, const QContext& ctx,
                           Real* err = nullptr);

/// Jacobi triple product (q, -z, -q/z; q)_inf.
ScaledComplex theta_triple_product(Complex z, const QContext& ctx);

// ---------------------------------------------------------------------------
// q-exponential, q-gamma
// ---------------------------------------------------------------------------

/// E_q(z) = sum_{n>=0} q^{n(n-1)/2} z^n / (q;q)_n (entire in z).
EvalResult q_exponential(Complex z, const QContext& ctx);

/// E_q(z) = (-z;q)_inf, scaled.
ScaledComplex q_exponential_product(Complex z, const QContext& ctx);

/// Gamma_q(z) = (q;q)_inf / (q^z;q)_inf * (1 - q)^{1-z}.
EvalResult q_gamma(Complex z, const QContext& ctx);

// ---------------------------------------------------------------------------
// Classical references
// ---------------------------------------------------------------------------

/// Lanczos approximation with reflection for Re z < 1/2.
Complex classical_gamma(Complex z);

enum class HypergeometricKind { F00, F01, F10, F21 };

/// pFq by direct summation. Parameter counts: 0F0 none, 0F1 {b},
/// 1F0 {a}, 2F1 {a, b, c}. 1F0 and 2F1 require |z| < 1.
EvalResult classical_hypergeometric(HypergeometricKind kind,
                                    std::span<const Real> params, Complex z);

}  // namespace qresum
