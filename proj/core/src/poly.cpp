#include "skewfatou/poly.hpp"

#include <algorithm>
#include <string>

#include "skewfatou/errors.hpp"

namespace skewfatou {

Poly1::Poly1(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == Complex(0.0)) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  for (const auto& c : coeffs_) {
    if (!is_finite(c)) throw InvalidArgument("non-finite polynomial coefficient");
  }
}

Poly1 Poly1::monomial(int degree, Complex coeff) {
  std::vector<Complex> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coeff;
  return Poly1(std::move(c));
}

double Poly1::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Poly1::lower_coeff_l1() const {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k) s += std::abs(coeffs_[k]);
  return s;
}

std::pair<Complex, Complex> Poly1::eval_with_derivative(Complex x) const {
  Complex v = coeffs_.back();
  Complex dv = 0.0;
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
    dv = dv * x + v;
    v = v * x + coeffs_[k];
  }
  return {v, dv};
}

Poly1 Poly1::derivative() const {
  if (coeffs_.size() == 1) return Poly1({0.0});
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Poly1(std::move(d));
}

Poly1 Poly1::compose(const Poly1& inner) const {
  // Horner in polynomial arithmetic
  Poly1 acc({coeffs_.back()});
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
    acc = acc * inner + Poly1({coeffs_[k]});
  }
  return acc;
}

Poly1 Poly1::minus_constant(Complex c) const {
  auto out = coeffs_;
  out[0] -= c;
  return Poly1(std::move(out));
}

Poly1 operator+(const Poly1& a, const Poly1& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return Poly1(std::move(c));
}

Poly1 operator*(const Poly1& a, const Poly1& b) {
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == Complex(0.0)) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly1(std::move(c));
}

Poly1 operator*(Complex s, const Poly1& a) {
  auto c = a.coeffs_;
  for (auto& x : c) x *= s;
  return Poly1(std::move(c));
}

Poly1 from_roots(std::span<const Complex> roots) {
  Poly1 acc({1.0});
  for (const auto& r : roots) acc = acc * Poly1({-r, 1.0});
  return acc;
}

FiberPoly::FiberPoly(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return a.k != b.k ? a.k < b.k : a.j < b.j;
  });
  for (const auto& t : terms) {
    if (t.j < 0 || t.k < 0) throw InvalidArgument("negative exponent in fiber polynomial");
    if (!is_finite(t.coeff)) throw InvalidArgument("non-finite fiber coefficient");
    if (!terms_.empty() && terms_.back().j == t.j && terms_.back().k == t.k) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.coeff == Complex(0.0); });
  build_tables();
}

void FiberPoly::build_tables() {
  w_degree_ = 0;
  for (const auto& t : terms_) w_degree_ = std::max(w_degree_, t.k);
  z_tables_.assign(static_cast<std::size_t>(w_degree_) + 1, std::vector<Complex>{0.0});
  for (const auto& t : terms_) {
    auto& row = z_tables_[static_cast<std::size_t>(t.k)];
    if (row.size() < static_cast<std::size_t>(t.j) + 1) row.resize(static_cast<std::size_t>(t.j) + 1, 0.0);
    row[static_cast<std::size_t>(t.j)] = t.coeff;
  }
}

Complex FiberPoly::coeff(int j, int k) const {
  for (const auto& t : terms_) {
    if (t.j == j && t.k == k) return t.coeff;
  }
  return 0.0;
}

int FiberPoly::total_degree() const {
  int deg = 0;
  for (const auto& t : terms_) deg = std::max(deg, t.j + t.k);
  return deg;
}

void FiberPoly::w_coefficients(Complex z, std::span<Complex> out) const {
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = k < z_tables_.size() ? horner<Complex>(z_tables_[k], z) : Complex(0.0);
  }
}

Poly1 FiberPoly::fiber(Complex z) const {
  std::vector<Complex> c(static_cast<std::size_t>(w_degree_) + 1);
  w_coefficients(z, c);
  return Poly1(std::move(c));
}

FiberPoly FiberPoly::dw() const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.k == 0) continue;
    out.push_back({t.j, t.k - 1, static_cast<double>(t.k) * t.coeff});
  }
  return FiberPoly(std::move(out));
}

FiberPoly FiberPoly::homogeneous_part(int degree) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.j + t.k == degree) out.push_back(t);
  }
  return FiberPoly(std::move(out));
}

SkewProduct::SkewProduct(int d, Poly1 p, FiberPoly q) : d_(d), p_(std::move(p)), q_(std::move(q)) {
  if (d < 2) throw DegreeTooLow("d = " + std::to_string(d) + " < 2");
  if (p_.degree() != d) {
    throw DegreeMismatch("base polynomial has degree " + std::to_string(p_.degree()) + ", expected " +
                         std::to_string(d));
  }
  if (!p_.is_monic()) throw NotMonic("leading coefficient of p is not exactly 1");
  if (q_.total_degree() > d) {
    throw DegreeMismatch("fiber polynomial has total degree " + std::to_string(q_.total_degree()) +
                         " > " + std::to_string(d));
  }
  const Complex lead = q_.coeff(0, d);
  if (lead == Complex(0.0)) throw DegreeMismatch("fiber polynomial has no w^d term");
  if (lead != Complex(1.0)) throw NotMonic("coefficient of w^d in q is not exactly 1");
}

std::pair<Complex, Complex> eval_f(const SkewProduct& sp, Complex z, Complex w) {
  const Complex z1 = sp.p(z);
  const Complex w1 = sp.q(z, w);
  if (!is_finite(z1) || !is_finite(w1)) throw Overflow("f(z, w) is not representable");
  return {z1, w1};
}

FiberPoly vertical_derivative(const SkewProduct& sp) { return sp.fiber_poly().dw(); }

Poly1 infinity_map(const SkewProduct& sp) {
  const int d = sp.degree();
  std::vector<Complex> c(static_cast<std::size_t>(d) + 1, 0.0);
  for (const auto& t : sp.fiber_poly().terms()) {
    if (t.j + t.k == d) c[static_cast<std::size_t>(t.k)] += t.coeff;
  }
  return Poly1(std::move(c));
}

}  // namespace skewfatou
