#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "skewfatou/poly.hpp"

namespace skewfatou {

/// Complex number with a separate binary exponent: value = mant * 2^exp.
/// Lets orbits be followed far past the double range so Green's function
/// tails can be summed without overflow.
class XComplex {
 public:
  XComplex() = default;
  XComplex(Complex c) : mant_(c) { normalize(); }  // NOLINT(implicit)

  double log_abs() const {
    if (mant_ == Complex(0.0)) return -INFINITY;
    return std::log(std::abs(mant_)) + static_cast<double>(exp_) * std::numbers::ln2;
  }
  bool is_zero() const { return mant_ == Complex(0.0); }

  friend XComplex operator*(const XComplex& a, const XComplex& b) {
    XComplex r;
    r.mant_ = a.mant_ * b.mant_;
    r.exp_ = a.exp_ + b.exp_;
    r.normalize();
    return r;
  }
  friend XComplex operator+(const XComplex& a, const XComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const XComplex& hi = a.exp_ >= b.exp_ ? a : b;
    const XComplex& lo = a.exp_ >= b.exp_ ? b : a;
    const std::int64_t shift = hi.exp_ - lo.exp_;
    if (shift > 1100) return hi;
    XComplex r;
    const int s = static_cast<int>(-shift);
    r.mant_ = hi.mant_ + Complex(std::ldexp(lo.mant_.real(), s), std::ldexp(lo.mant_.imag(), s));
    r.exp_ = hi.exp_;
    r.normalize();
    return r;
  }
  friend XComplex operator+(const XComplex& a, Complex b) { return a + XComplex(b); }

 private:
  void normalize() {
    const double m = std::max(std::abs(mant_.real()), std::abs(mant_.imag()));
    if (m == 0.0 || !std::isfinite(m)) return;
    int e = 0;
    std::frexp(m, &e);
    mant_ = Complex(std::ldexp(mant_.real(), -e), std::ldexp(mant_.imag(), -e));
    exp_ += e;
  }

  Complex mant_{0.0};
  std::int64_t exp_ = 0;
};

/// log sqrt(|a|^2 + |b|^2) without overflow.
inline double log_norm2(const XComplex& a, const XComplex& b) {
  const double la = a.log_abs();
  const double lb = b.log_abs();
  const double hi = std::max(la, lb);
  if (hi == -INFINITY) return -INFINITY;
  const double lo = std::min(la, lb);
  return hi + 0.5 * std::log1p(std::exp(2.0 * (lo - hi)));
}

}  // namespace skewfatou
