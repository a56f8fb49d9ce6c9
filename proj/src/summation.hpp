#pragma once

// Tail summation shared by the q-series evaluators.

#include <algorithm>
#include <cmath>
#include <string>

#include "qresum/types.hpp"

namespace qresum::detail {

struct TailSum {
  Complex sum{};
  Real err_abs = 0.0L;  // bound on the discarded remainder
  Real scale = 0.0L;    // largest |partial sum| seen; reference for err_abs
  int terms = 0;
};

/// The term after the current one together with a bound r on
/// |t_{m+1} / t_m| valid for every later index m. r >= 1 (or NaN) means the
/// remainder cannot be certified yet.
struct Step {
  Complex next;
  Real ratio_bound;
};

/// Sums first, step(0, first), ... Stops once consecutive_small successive
/// terms fell below tail_tol * scale and |next| / (1 - r) certifies the
/// remainder at the same level.
template <class StepFn>
TailSum sum_tail(const QContext& ctx, Complex first, StepFn&& step,
                 int max_terms, const char* what) {
  TailSum out;
  Complex t = first;
  int small_run = 0;
  const Real tol = ctx.tail_tol();
  for (int i = 0; i < max_terms; ++i) {
    out.sum += t;
    out.terms = i + 1;
    out.scale = std::max({out.scale, std::abs(out.sum), std::abs(t)});
    if (!is_finite(out.sum)) {
      throw Error(ErrorKind::Overflow, std::string(what) + ": partial sum overflowed");
    }
    const Step s = step(i, t);
    if (s.next == Complex{} && s.ratio_bound == 0.0L) {
      return out;  // terminating series
    }
    const Real level = tol * out.scale;
    small_run = std::abs(t) <= level ? small_run + 1 : 0;
    if (small_run >= ctx.consecutive_small() && s.ratio_bound < 1.0L) {
      const Real remainder = std::abs(s.next) / (1.0L - s.ratio_bound);
      if (remainder <= level) {
        out.err_abs = remainder;
        return out;
      }
    }
    t = s.next;
  }
  throw Error(ErrorKind::MaxTermsExceeded,
              std::string(what) + ": tail not certified within " +
                  std::to_string(max_terms) + " terms");
}

/// Summation for term sequences without an analytic ratio bound: the bound
/// is replaced by the largest observed ratio over the last consecutive_small
/// terms. Used for the Jackson sum and for generic coefficient families.
template <class TermFn>
TailSum sum_tail_observed(const QContext& ctx, TermFn&& term, int max_terms,
                          ErrorKind on_failure, const char* what) {
  TailSum out;
  int small_run = 0;
  Real max_ratio = 0.0L;
  Complex prev{};
  const Real tol = ctx.tail_tol();
  const int window = ctx.consecutive_small();
  for (int i = 0; i < max_terms; ++i) {
    const Complex t = term(i);
    out.sum += t;
    out.terms = i + 1;
    out.scale = std::max({out.scale, std::abs(out.sum), std::abs(t)});
    if (!is_finite(out.sum)) {
      throw Error(ErrorKind::Overflow, std::string(what) + ": partial sum overflowed");
    }
    const Real level = tol * out.scale;
    if (std::abs(t) <= level) {
      const Real ratio = prev == Complex{} ? (t == Complex{} ? 0.0L : 1.0L)
                                           : std::abs(t) / std::abs(prev);
      max_ratio = small_run == 0 ? ratio : std::max(max_ratio, ratio);
      ++small_run;
    } else {
      small_run = 0;
    }
    if (small_run >= window && max_ratio < 1.0L) {
      const Real remainder = std::abs(t) * max_ratio / (1.0L - max_ratio);
      if (remainder <= level) {
        out.err_abs = remainder;
        return out;
      }
    }
    prev = t;
  }
  throw Error(on_failure, std::string(what) + ": tail not certified within " +
                              std::to_string(max_terms) + " terms");
}

/// A factor 1 - a q^k that equals zero up to rounding.
inline bool is_vanishing_factor(Complex factor) {
  return std::abs(factor) <= 64.0L * std::numeric_limits<Real>::epsilon();
}

// Is p q^k within `guard` of 1 for some k in [k_lo, k_hi]? Reports the
// closest such k and whether the factor vanishes to rounding.
struct PowerHit {
  bool near = false;
  bool exact = false;
  long long k = 0;
};

inline PowerHit near_inverse_power(Complex p, const QContext& ctx, long long k_lo,
                                   long long k_hi, Real guard) {
  PowerHit hit;
  if (p == Complex{}) return hit;
  const Real centre = -std::log(std::abs(p)) / ctx.log_q();
  const long long k0 = static_cast<long long>(std::llround(centre));
  for (long long k = k0 - 1; k <= k0 + 1; ++k) {
    if (k < k_lo || k > k_hi) continue;
    const Complex factor = Complex(1.0L) - p * std::pow(ctx.q(), static_cast<Real>(k));
    if (std::abs(factor) < guard) {
      hit.near = true;
      hit.k = k;
      hit.exact = hit.exact || is_vanishing_factor(factor);
    }
  }
  return hit;
}

}  // namespace qresum::detail
