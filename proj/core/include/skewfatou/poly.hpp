#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace skewfatou {

using Complex = std::complex<double>;

inline bool is_finite(Complex c) {
  return std::isfinite(c.real()) && std::isfinite(c.imag());
}

/// Horner evaluation of sum_k coeffs[k] x^k over any scalar type that
/// supports multiplication and addition with Complex.
template <class T>
T horner(std::span<const Complex> coeffs, const T& x) {
  T acc = T(coeffs.back());
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    acc = acc * x + coeffs[k];
  }
  return acc;
}

/// Dense univariate polynomial; coeffs[k] multiplies x^k.
class Poly1 {
 public:
  /// Trailing zero coefficients are dropped; the zero polynomial is {0}.
  explicit Poly1(std::vector<Complex> coeffs);

  static Poly1 monomial(int degree, Complex coeff = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex leading() const { return coeffs_.back(); }
  bool is_monic() const { return coeffs_.back() == Complex(1.0, 0.0); }

  /// Largest coefficient magnitude (including the leading one).
  double max_abs_coeff() const;
  /// Sum of |coeff| over all coefficients below the leading one.
  double lower_coeff_l1() const;

  Complex operator()(Complex x) const { return horner<Complex>(coeffs_, x); }
  /// Value and first derivative in one pass.
  std::pair<Complex, Complex> eval_with_derivative(Complex x) const;

  Poly1 derivative() const;
  /// this(inner(x))
  Poly1 compose(const Poly1& inner) const;
  /// this(x) - c
  Poly1 minus_constant(Complex c) const;

  friend Poly1 operator+(const Poly1& a, const Poly1& b);
  friend Poly1 operator*(const Poly1& a, const Poly1& b);
  friend Poly1 operator*(Complex s, const Poly1& a);
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Complex(0.0); }
  friend bool operator==(const Poly1& a, const Poly1& b) = default;

 private:
  std::vector<Complex> coeffs_;
};

/// Monic polynomial prod_k (x - roots[k]).
Poly1 from_roots(std::span<const Complex> roots);

/// One monomial c * z^j * w^k of a two-variable polynomial.
struct Term {
  int j = 0;
  int k = 0;
  Complex coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial in (z, w). Zero coefficients are never stored; terms are
/// kept sorted by (k, j).
class FiberPoly {
 public:
  FiberPoly() = default;
  /// Merges duplicate monomials by summation and drops zeros.
  explicit FiberPoly(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  Complex coeff(int j, int k) const;
  int total_degree() const;
  int w_degree() const { return w_degree_; }

  /// Coefficients a_k(z) of w^k, k = 0..w_degree(), at a fixed z.
  void w_coefficients(Complex z, std::span<Complex> out) const;
  /// The fiber polynomial w -> q(z, w).
  Poly1 fiber(Complex z) const;

  template <class T>
  T eval(const T& z, const T& w) const;
  Complex operator()(Complex z, Complex w) const { return eval<Complex>(z, w); }

  /// d/dw
  FiberPoly dw() const;
  /// Homogeneous part of the given total degree.
  FiberPoly homogeneous_part(int degree) const;

  friend bool operator==(const FiberPoly&, const FiberPoly&) = default;

 private:
  void build_tables();

  std::vector<Term> terms_;
  int w_degree_ = 0;
  // z_tables_[k] = dense coefficients in z of a_k(z)
  std::vector<std::vector<Complex>> z_tables_;
};

template <class T>
T FiberPoly::eval(const T& z, const T& w) const {
  if (z_tables_.empty()) return T(Complex(0.0));
  T acc = horner<T>(z_tables_[w_degree_], z);
  for (int k = w_degree_; k-- > 0;) {
    acc = acc * w + horner<T>(z_tables_[k], z);
  }
  return acc;
}

/// f(z, w) = (p(z), q(z, w)) with p monic of degree d and q of total degree
/// at most d with w^d coefficient exactly 1.
class SkewProduct {
 public:
  /// Throws DegreeTooLow, DegreeMismatch or NotMonic.
  SkewProduct(int d, Poly1 p, FiberPoly q);

  int degree() const { return d_; }
  const Poly1& base() const { return p_; }
  const FiberPoly& fiber_poly() const { return q_; }

  Complex p(Complex z) const { return p_(z); }
  Complex q(Complex z, Complex w) const { return q_(z, w); }

  friend bool operator==(const SkewProduct&, const SkewProduct&) = default;

 private:
  int d_;
  Poly1 p_;
  FiberPoly q_;
};

/// (p(z), q(z, w)); throws Overflow when the result is not finite.
std::pair<Complex, Complex> eval_f(const SkewProduct& sp, Complex z, Complex w);

/// dq/dw as a two-variable polynomial.
FiberPoly vertical_derivative(const SkewProduct& sp);

/// u -> q_d(1, u), the action on the line at infinity.
Poly1 infinity_map(const SkewProduct& sp);

}  // namespace skewfatou
