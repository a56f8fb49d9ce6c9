#pragma once

#include <array>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qresum/qcore.hpp"
#include "qresum/reports.hpp"

namespace qresum {

/// The set {base * q^k : k in Z}.
struct QSpiral {
  Complex base{1.0L, 0.0L};

  explicit QSpiral(Complex b);

  /// min_k |x - base q^k| / |x| over the nearest lattice points.
  Real distance(Complex x, const QContext& ctx) const;
  /// The exponent k of the lattice point nearest to x.
  long long nearest_index(Complex x, const QContext& ctx) const;
};

enum class DomainKind { Disk, Annulus, ExteriorDisk, Everywhere, Empty };

struct ConvergenceDomain {
  DomainKind kind = DomainKind::Everywhere;
  Real r_in = 0.0L;
  Real r_out = std::numeric_limits<Real>::infinity();
  std::vector<QSpiral> excluded_spirals;

  static ConvergenceDomain disk(Real r);
  static ConvergenceDomain annulus(Real r_in, Real r_out);
  static ConvergenceDomain exterior(Real r);
  static ConvergenceDomain everywhere();
  static ConvergenceDomain empty();

  /// Membership: strict radial inequalities and, for each excluded spiral,
  /// relative distance greater than `guard`.
  bool contains(Complex z, const QContext& ctx, Real guard = 1e-6L) const;
  std::string describe() const;
};

/// Domain of sum_{n>=0} (a;q)_n / ((b;q)_n (q;q)_n) [(-1)^n q^{n(n-1)/2}]^{1+s-r} z^n.
ConvergenceDomain unilateral_domain(std::span<const Complex> upper,
                                    std::span<const Complex> lower,
                                    const QContext& ctx);
/// Domain of the bilateral series r psi s.
ConvergenceDomain bilateral_domain(std::span<const Complex> upper,
                                   std::span<const Complex> lower,
                                   const QContext& ctx);

// ---------------------------------------------------------------------------
// Formal series
// ---------------------------------------------------------------------------

enum class SeriesKind { OnePsiOne, OnePsiZero, ZeroPsiOne, Generic };

/// Names the series sum_n c_n xi^n as a known series evaluated at
/// z = arg_scale * xi. Generic families carry no closed description.
struct SeriesDescriptor {
  SeriesKind kind = SeriesKind::Generic;
  Complex a{};
  Complex b{};
  Complex arg_scale{1.0L, 0.0L};
  std::string label;

  std::string describe() const;
};

/// A coefficient family n -> c_n on the window [-N, N]. This is the only
/// representation for the everywhere-divergent series 1psi1(0;b) and
/// 1psi0(a;-); eval_bilateral_psi refuses them.
class FormalBilateralSeries {
 public:
  using Coefficient = std::function<Complex(int)>;

  FormalBilateralSeries(SeriesDescriptor descriptor, Coefficient coeff, int window);

  /// 1psi1(a;b;q, s xi): c_n = (a;q)_n / (b;q)_n * s^n
  static FormalBilateralSeries one_psi_one(Complex a, Complex b, const QContext& ctx,
                                           Complex arg_scale = Complex(1.0L));
  /// 1psi0(a;-;q, s xi): c_n = (a;q)_n [(-1)^n q^{n(n-1)/2}]^{-1} s^n
  static FormalBilateralSeries one_psi_zero(Complex a, const QContext& ctx,
                                            Complex arg_scale = Complex(1.0L));
  /// 0psi1(-;b;q, s xi): c_n = (-1)^n q^{n(n-1)/2} / (b;q)_n * s^n
  static FormalBilateralSeries zero_psi_one(Complex b, const QContext& ctx,
                                            Complex arg_scale = Complex(1.0L));
  /// Unilateral r phi s coefficients, zero for n < 0.
  static FormalBilateralSeries unilateral_phi(std::vector<Complex> upper,
                                              std::vector<Complex> lower,
                                              const QContext& ctx);

  const SeriesDescriptor& descriptor() const { return descriptor_; }
  int window() const { return window_; }
  /// Throws InvalidArgument outside [-window, window].
  Complex coeff(int n) const;
  const Coefficient& coefficient_fn() const { return coeff_; }

 private:
  SeriesDescriptor descriptor_;
  Coefficient coeff_;
  int window_;
};

/// Sums a formal family at z. Named bilateral families go through
/// eval_bilateral_psi (and its domain checks); others are summed from their
/// coefficients with observed-ratio tail certification.
EvalResult evaluate_formal(const FormalBilateralSeries& s, Complex z, const QContext& ctx);

// ---------------------------------------------------------------------------
// Numeric evaluators
// ---------------------------------------------------------------------------

EvalResult eval_unilateral_phi(std::span<const Complex> upper,
                               std::span<const Complex> lower, const QContext& ctx,
                               Complex z);

EvalResult eval_bilateral_psi(std::span<const Complex> upper,
                              std::span<const Complex> lower, const QContext& ctx,
                              Complex z);

// ---------------------------------------------------------------------------
// q-difference equations
// ---------------------------------------------------------------------------

/// Polynomial in x, ascending coefficients.
struct Polynomial {
  std::vector<Complex> coeffs;

  Complex operator()(Complex x) const;
  bool is_zero() const;
};

/// p_2(x) u(q^2 x) + p_1(x) u(q x) + p_0(x) u(x) = 0
class QDifferenceEquation {
 public:
  /// shift[j] multiplies u(q^j x).
  explicit QDifferenceEquation(std::array<Polynomial, 3> shift, std::string name = {});

  static QDifferenceEquation heine(Complex a, Complex b, Complex c, const QContext& ctx);
  /// (b/q - a x) u(qx) + (x - 1) u(x) = 0
  static QDifferenceEquation one_psi_one(Complex a, Complex b, const QContext& ctx);
  /// a -> 0 limit of one_psi_one: (b/q) u(qx) + (x - 1) u(x) = 0
  static QDifferenceEquation degeneration_a(Complex b, const QContext& ctx);
  /// (1/q - a x) u(qx) + x u(x) = 0
  static QDifferenceEquation degeneration_b(Complex a, const QContext& ctx);

  const Polynomial& coefficient(int shift) const { return shift_.at(shift); }
  const std::string& name() const { return name_; }

 private:
  std::array<Polynomial, 3> shift_;
  std::string name_;
};

using ComplexFunction = std::function<Complex(Complex)>;

/// |sum_j p_j(x) u(q^j x)| / max_j |p_j(x) u(q^j x)|
Real qdiff_residual(const QDifferenceEquation& eq, const ComplexFunction& u,
                    const QContext& ctx, Complex x);

/// Substitutes sum c_n x^n into eq and checks, for every N in [n_lo, n_hi],
///   sum_{j,d} p_{j,d} q^{j(N-d)} c_{N-d} = 0
/// relative to the largest summand.
IdentityReport formal_recurrence_check(const FormalBilateralSeries& s,
                                       const QDifferenceEquation& eq, const QContext& ctx,
                                       int n_lo, int n_hi, Real tol = 1e-14L);

// ---------------------------------------------------------------------------
// Watson
// ---------------------------------------------------------------------------

/// 2phi1(a,b;c;q,x) against its expansion in the two solutions near
/// infinity,
///   v_1 = (-ax,-q/ax;q)_inf / (-x,-q/x;q)_inf * 2phi1(a, aq/c; aq/b; q, cq/(abx))
/// with elliptic coefficient
///   (b,c/a;q)_inf/(c,b/a;q)_inf * (ax,q/ax;q)_inf (-x,-q/x;q)_inf
///                               / ((x,q/x;q)_inf (-ax,-q/ax;q)_inf)
/// and a <-> b for v_2. The (-x,-q/x) and (-ax,-q/ax) factors cancel in
/// each product, so the sum is taken in the cancelled form and only x on
/// q^Z is rejected. Both sides are summed where they converge
/// simultaneously; no continuation is attempted.
IdentityReport watson_connection_check(Complex a, Complex b, Complex c,
                                       const QContext& ctx, Complex x,
                                       Real tol = 1e-8L);

/// v_1 alone; singular where (-x,-q/x;q)_inf vanishes.
Complex watson_solution_at_infinity(Complex a, Complex b, Complex c, const QContext& ctx,
                                    Complex x);

inline constexpr Real kSpiralGuard = 1e-6L;

}  // namespace qresum
