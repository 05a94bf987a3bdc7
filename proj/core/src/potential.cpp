#include "skewfatou/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "skewfatou/errors.hpp"
#include "skewfatou/xcomplex.hpp"

namespace skewfatou {
namespace {

// Tail iteration stops once d^-n falls below this.
constexpr double kTailScale = 1e-13;

}  // namespace

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Inside:
      return "inside";
    case Membership::Outside:
      return "outside";
    case Membership::Undecided:
      return "undecided";
  }
  return "undecided";
}

double escape_radius(const Poly1& monic) {
  const double s = monic.lower_coeff_l1() / std::abs(monic.leading());
  return std::max(2.0 * s, s + 2.0);
}

double fiber_escape_radius(const SkewProduct& sp, double rho) {
  double s = 0.0;
  for (const auto& t : sp.fiber_poly().terms()) {
    if (t.k >= sp.degree()) continue;
    s += std::abs(t.coeff) * std::pow(rho, t.j);
  }
  return std::max(2.0 * s, s + 2.0);
}

double green_polynomial(const Poly1& map, Complex x, int n_max, double bailout) {
  const double d = map.degree();
  const double limit = std::max(bailout, escape_radius(map));
  const int tail = static_cast<int>(std::ceil(-std::log(kTailScale) / std::log(d)));
  for (int n = 0; n <= n_max; ++n) {
    if (std::abs(x) > limit) {
      XComplex xx(x);
      const int steps = std::max(2, tail - n);
      for (int t = 0; t < steps; ++t) xx = horner<XComplex>(map.coeffs(), xx);
      return std::pow(d, -(n + steps)) * xx.log_abs();
    }
    x = map(x);
  }
  return 0.0;
}

EscapeParams escape_params(const SkewProduct& sp, int n_max, double bailout) {
  EscapeParams ep;
  ep.r_base = escape_radius(sp.base());
  ep.r_fiber = fiber_escape_radius(sp, ep.r_base + 1.0);
  ep.n_max = n_max;
  ep.bailout = std::max({bailout, ep.r_base, ep.r_fiber});
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  return ep;
}

PotentialEvaluator::PotentialEvaluator(SkewProduct sp)
    : PotentialEvaluator(sp, escape_params(sp)) {}

PotentialEvaluator::PotentialEvaluator(SkewProduct sp, EscapeParams params)
    : sp_(std::move(sp)), params_(params), f_inf_(infinity_map(sp_)), r_inf_(escape_radius(f_inf_)) {
  if (params_.r_base < 2.0 || params_.r_fiber < 2.0) throw InvalidArgument("escape radii must be >= 2");
  if (params_.n_max < 1) throw InvalidArgument("n_max must be >= 1");
  if (params_.bailout < params_.r_fiber || params_.bailout < params_.r_base) {
    throw InvalidArgument("bailout must be >= both escape radii");
  }
  if (params_.r_base < escape_radius(sp_.base()) ||
      params_.r_fiber < fiber_escape_radius(sp_, params_.r_base + 1.0)) {
    throw InvalidArgument("escape radii below the certified algebraic bound");
  }
}

int PotentialEvaluator::tail_length(int n) const {
  const double log_d = std::log(static_cast<double>(sp_.degree()));
  const int needed = static_cast<int>(std::ceil(-std::log(kTailScale) / log_d));
  return std::max(2, needed - n);
}

GreenValue PotentialEvaluator::green_1d(const Poly1& map, double radius, Complex x) const {
  const double d = map.degree();
  bool left = false;
  for (int n = 0;; ++n) {
    const double a = std::abs(x);
    if (a > params_.bailout) {
      const double scale = std::pow(d, -n);
      return {scale * std::log(a), scale * std::numbers::ln2, false, n};
    }
    if (a > radius) left = true;
    if (n == params_.n_max) break;
    x = map(x);
  }
  if (!left) return {};
  const double scale = std::pow(d, -params_.n_max);
  return {scale * std::max(0.0, std::log(std::abs(x))), scale * std::log(params_.bailout), true, -1};
}

GreenValue PotentialEvaluator::green_base(Complex z) const { return green_1d(sp_.base(), params_.r_base, z); }

GreenValue PotentialEvaluator::green_infinity(Complex u) const { return green_1d(f_inf_, r_inf_, u); }

GreenValue PotentialEvaluator::green_full(Complex z, Complex w) const {
  const double d = sp_.degree();
  bool left = false;
  for (int n = 0;; ++n) {
    const double az = std::abs(z);
    const double aw = std::abs(w);
    if (std::max(az, aw) > params_.bailout) {
      XComplex xz(z), xw(w);
      const int steps = tail_length(n);
      for (int t = 0; t < steps; ++t) {
        const XComplex nz = horner<XComplex>(sp_.base().coeffs(), xz);
        xw = sp_.fiber_poly().eval<XComplex>(xz, xw);
        xz = nz;
      }
      const double scale = std::pow(d, -(n + steps));
      return {scale * std::max(0.0, log_norm2(xz, xw)), scale * std::numbers::ln2, false, n};
    }
    if (az > params_.r_base || aw > params_.r_fiber) left = true;
    if (n == params_.n_max) break;
    const Complex nz = sp_.p(z);
    w = sp_.q(z, w);
    z = nz;
  }
  if (!left) return {};
  const double scale = std::pow(d, -params_.n_max);
  return {scale * std::max(0.0, std::log(std::hypot(std::abs(z), std::abs(w)))),
          scale * std::log(params_.bailout), true, -1};
}

GreenValue PotentialEvaluator::green_fiber(Complex z, Complex w) const {
  const double d = sp_.degree();
  bool left = false;
  for (int n = 0;; ++n) {
    const double az = std::abs(z);
    const double aw = std::abs(w);
    if (az > params_.bailout || aw > params_.bailout) {
      XComplex xz(z), xw(w);
      const int steps = tail_length(n);
      for (int t = 0; t < steps; ++t) {
        const XComplex nz = horner<XComplex>(sp_.base().coeffs(), xz);
        xw = sp_.fiber_poly().eval<XComplex>(xz, xw);
        xz = nz;
      }
      const double scale = std::pow(d, -(n + steps));
      const double lw = xw.log_abs();
      return {scale * std::max(0.0, lw), scale * std::numbers::ln2, false, n};
    }
    if (az > params_.r_base || aw > params_.r_fiber) left = true;
    if (n == params_.n_max) break;
    const Complex nz = sp_.p(z);
    w = sp_.q(z, w);
    z = nz;
  }
  if (!left) return {};
  const double scale = std::pow(d, -params_.n_max);
  return {scale * std::max(0.0, std::log(std::abs(w))), scale * std::log(params_.bailout), true, -1};
}

GreenValue PotentialEvaluator::green_relative(Complex z, Complex w) const {
  const GreenValue g = green_full(z, w);
  const GreenValue gp = green_base(z);
  GreenValue out;
  out.error_bound = g.error_bound + gp.error_bound + 1e-12;
  out.ambiguous = g.ambiguous || gp.ambiguous;
  out.escape_step = g.escape_step;
  const double diff = g.value - gp.value;
  out.value = diff <= out.error_bound ? 0.0 : diff;
  return out;
}

Membership PotentialEvaluator::member_1d(const Poly1& map, double radius, Complex x) const {
  bool left = false;
  for (int n = 0;; ++n) {
    const double a = std::abs(x);
    if (a > params_.bailout) return Membership::Outside;
    if (a > radius) left = true;
    if (n == params_.n_max) break;
    x = map(x);
  }
  return left ? Membership::Undecided : Membership::Inside;
}

Membership PotentialEvaluator::in_base(Complex z) const { return member_1d(sp_.base(), params_.r_base, z); }

Membership PotentialEvaluator::in_infinity(Complex u) const { return member_1d(f_inf_, r_inf_, u); }

Membership PotentialEvaluator::fiber_composition(Complex z, Complex w) const {
  bool left = false;
  for (int n = 0;; ++n) {
    const double az = std::abs(z);
    const double aw = std::abs(w);
    if (aw > params_.bailout) return Membership::Outside;
    if (az > params_.bailout) {
      // base escaped: follow the fiber coordinate a little further in
      // extended range and judge by its final size
      XComplex xz(z), xw(w);
      const int steps = tail_length(n);
      for (int t = 0; t < steps; ++t) {
        const XComplex nz = horner<XComplex>(sp_.base().coeffs(), xz);
        xw = sp_.fiber_poly().eval<XComplex>(xz, xw);
        xz = nz;
      }
      const double lw = xw.log_abs();
      if (lw > std::log(params_.bailout)) return Membership::Outside;
      if (lw <= std::log(params_.r_fiber)) return Membership::Inside;
      return Membership::Undecided;
    }
    if (az > params_.r_base || aw > params_.r_fiber) left = true;
    if (n == params_.n_max) break;
    const Complex nz = sp_.p(z);
    w = sp_.q(z, w);
    z = nz;
  }
  return left ? Membership::Undecided : Membership::Inside;
}

Membership PotentialEvaluator::in_fiber(Complex z, Complex w) const {
  switch (in_base(z)) {
    case Membership::Inside:
      return fiber_composition(z, w);
    case Membership::Undecided:
      return Membership::Undecided;
    case Membership::Outside:
      break;
  }
  const GreenValue gf = green_fiber(z, w);
  const GreenValue gp = green_base(z);
  if (gf.ambiguous || gp.ambiguous) return Membership::Undecided;
  const double margin = gf.error_bound + gp.error_bound + 1e-12;
  return gf.value <= gp.value + margin ? Membership::Inside : Membership::Outside;
}

Membership PotentialEvaluator::in_K(SetKind which, Complex point, Complex fiber_z) const {
  switch (which) {
    case SetKind::Base:
      return in_base(point);
    case SetKind::Fiber:
      return in_fiber(fiber_z, point);
    case SetKind::Infinity:
      return in_infinity(point);
  }
  return Membership::Undecided;
}

FiberMembership PotentialEvaluator::fiber_membership(Complex z, Complex w) const {
  return {in_fiber(z, w), fiber_composition(z, w)};
}

}  // namespace skewfatou
