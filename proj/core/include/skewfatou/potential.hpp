#pragma once

#include "skewfatou/poly.hpp"

namespace skewfatou {

/// Escape radii and iteration budgets.
struct EscapeParams {
  /// |z| > r_base implies |p(z)| >= 2|z|.
  double r_base = 2.0;
  /// |w| > r_fiber and |z| <= r_base + 1 imply |q(z, w)| >= 2|w|.
  double r_fiber = 2.0;
  int n_max = 1000;
  double bailout = 1e8;
};

inline constexpr int kDefaultNMax = 1000;
inline constexpr double kDefaultBailout = 1e8;

/// Radius R with |x| > R  =>  |poly(x)| >= 2|x| for a monic polynomial of
/// degree >= 2, by the triangle inequality: max(2S, S + 2) with S the l1 norm
/// of the lower coefficients.
double escape_radius(const Poly1& monic);

/// Fiber escape radius valid for |z| <= rho, from coefficient bounds of the
/// z-polynomials a_k(z) on that disk.
double fiber_escape_radius(const SkewProduct& sp, double rho);

/// Escape-rate potential of a single monic polynomial, iterated past the
/// bailout in extended range so the truncation error is far below double
/// rounding. Returns 0 for orbits that stay bounded for n_max steps.
double green_polynomial(const Poly1& map, Complex x, int n_max = kDefaultNMax,
                        double bailout = kDefaultBailout);

/// Radii from the algebraic bounds with default budgets. Throws
/// InvalidArgument if the overrides violate an invariant.
EscapeParams escape_params(const SkewProduct& sp, int n_max = kDefaultNMax,
                           double bailout = kDefaultBailout);

/// A potential value with a certified truncation bound.
struct GreenValue {
  double value = 0.0;
  double error_bound = 0.0;
  /// Orbit left its escape radius but never reached bailout within budget.
  bool ambiguous = false;
  /// Step at which bailout was crossed, -1 if it never was.
  int escape_step = -1;
};

/// Outcome of a membership query. Undecided must be propagated by callers.
enum class Membership { Inside, Outside, Undecided };

const char* to_string(Membership m);

/// Which filled Julia set a membership query refers to.
enum class SetKind { Base, Fiber, Infinity };

/// Both readings of "w in K_z" for a given z. They agree whenever z lies in
/// K_p; over escaping z they can differ and the disagreement is reported.
struct FiberMembership {
  /// G(z, w) - G_p(z) == 0
  Membership relative = Membership::Undecided;
  /// second coordinate of f^n(z, w) stays bounded
  Membership composition = Membership::Undecided;
  bool disagree() const { return relative != composition; }
};

/// Immutable evaluator for G_p, G, the fiber limit and membership. All
/// queries are const and lock-free; one instance may serve any number of
/// threads.
class PotentialEvaluator {
 public:
  explicit PotentialEvaluator(SkewProduct sp);
  PotentialEvaluator(SkewProduct sp, EscapeParams params);

  const SkewProduct& map() const { return sp_; }
  const EscapeParams& params() const { return params_; }
  const Poly1& infinity_poly() const { return f_inf_; }
  double infinity_radius() const { return r_inf_; }

  /// lim d^-n log+ |p^n(z)|, truncated at the first bailout crossing.
  GreenValue green_base(Complex z) const;
  /// lim d^-n log+ ||f^n(z, w)||.
  GreenValue green_full(Complex z, Complex w) const;
  /// lim d^-n log+ |second coordinate of f^n(z, w)|.
  GreenValue green_fiber(Complex z, Complex w) const;
  /// G(z, w) - G_p(z), clamped to 0 inside the combined error bound.
  GreenValue green_relative(Complex z, Complex w) const;
  /// Green's function of f_Pi on the line at infinity.
  GreenValue green_infinity(Complex u) const;

  Membership in_base(Complex z) const;
  /// Relative K_z = {G_z = 0}; equals orbit boundedness when z is in K_p.
  Membership in_fiber(Complex z, Complex w) const;
  Membership in_infinity(Complex u) const;
  Membership in_K(SetKind which, Complex point, Complex fiber_z = 0.0) const;

  FiberMembership fiber_membership(Complex z, Complex w) const;

 private:
  GreenValue green_1d(const Poly1& map, double radius, Complex x) const;
  Membership member_1d(const Poly1& map, double radius, Complex x) const;
  Membership fiber_composition(Complex z, Complex w) const;
  int tail_length(int n) const;

  SkewProduct sp_;
  EscapeParams params_;
  Poly1 f_inf_;
  double r_inf_;
};

}  // namespace skewfatou
