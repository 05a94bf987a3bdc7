#include "skewfatou/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "skewfatou/errors.hpp"

namespace skewfatou {
namespace {

constexpr int kMaxIter = 800;
constexpr double kInitPhase = 0.4;

bool root_before(Complex a, Complex b) {
  const double scale = 1.0 + std::max(std::abs(a), std::abs(b));
  if (std::abs(a.real() - b.real()) > 1e-9 * scale) return a.real() < b.real();
  return a.imag() < b.imag();
}

void order_roots(std::vector<Complex>& r) {
  // insertion sort: the tolerance comparator is not a strict weak order
  for (std::size_t i = 1; i < r.size(); ++i) {
    for (std::size_t j = i; j > 0 && root_before(r[j], r[j - 1]); --j) std::swap(r[j], r[j - 1]);
  }
}

double residual_bound(const Poly1& poly, Complex r, double tol) {
  return tol * std::pow(1.0 + std::abs(r), poly.degree()) * poly.max_abs_coeff();
}

bool acceptable(const Poly1& poly, Complex r, double tol, double* ratio) {
  const double res = std::abs(poly(r));
  const double bound = residual_bound(poly, r, tol);
  if (!is_finite(r) || !std::isfinite(bound) || !std::isfinite(res)) {
    *ratio = std::numeric_limits<double>::infinity();
    return false;
  }
  *ratio = bound > 0 ? res / bound : res;
  return res <= bound;
}

}  // namespace

std::vector<Complex> roots(const Poly1& poly, double tol) {
  const int n = poly.degree();
  if (n < 1) throw InvalidArgument("roots() needs degree >= 1");
  const auto& c = poly.coeffs();
  if (n == 1) return {-c[0] / c[1]};
  if (n == 2) {
    // cancellation-free quadratic formula
    const Complex b = c[1] / c[2], k = c[0] / c[2];
    Complex s = std::sqrt(b * b - 4.0 * k);
    if ((std::conj(b) * s).real() < 0.0) s = -s;
    const Complex big = -0.5 * (b + s);
    std::vector<Complex> z{big, big == Complex(0.0) ? Complex(0.0) : k / big};
    double ratio = 0.0;
    for (const auto& r : z) {
      if (!acceptable(poly, r, tol, &ratio)) throw NoConvergence("degree 2 polynomial: residual exceeds tolerance");
    }
    order_roots(z);
    return z;
  }

  std::vector<Complex> a(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) a[k] = c[k] / c.back();
  const Poly1 monic(a);
  // circle about the root centroid with the geometric-mean radius, falling
  // back to the Fujiwara bound
  const Complex center = -a[static_cast<std::size_t>(n - 1)] / static_cast<double>(n);
  double radius = std::pow(std::abs(monic(center)), 1.0 / n);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    radius = 0.0;
    for (int k = 0; k < n; ++k) {
      const double ak = std::abs(a[static_cast<std::size_t>(k)]) * (k == 0 ? 0.5 : 1.0);
      radius = std::max(radius, std::pow(ak, 1.0 / (n - k)));
    }
    radius = radius > 0.0 ? 2.0 * radius : 1.0;
  }

  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n + kInitPhase;
    z[static_cast<std::size_t>(k)] = center + std::polar(radius, theta);
  }

  constexpr double eps = 1e-16;
  std::vector<double> abs_a(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) abs_a[i] = std::abs(a[i]);
  std::vector<bool> done(z.size(), false);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (done[k]) continue;
      const auto [v, dv] = monic.eval_with_derivative(z[k]);
      // running-error bound for Horner
      double mag = 0.0;
      const double az = std::abs(z[k]);
      for (std::size_t i = a.size(); i-- > 0;) mag = mag * az + abs_a[i];
      if (std::abs(v) <= 4.0 * n * eps * mag) {
        done[k] = true;
        continue;
      }
      Complex sum = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j == k) continue;
        Complex diff = z[k] - z[j];
        if (diff == Complex(0.0)) diff = Complex(eps, eps) * (1.0 + az);
        sum += std::conj(diff) / std::norm(diff);
      }
      const Complex ratio = v / dv;
      Complex step = ratio / (1.0 - ratio * sum);
      if (!is_finite(step)) step = Complex(eps, eps) * (1.0 + az);
      z[k] -= step;
      if (std::abs(step) <= eps * (1.0 + std::abs(z[k]))) done[k] = true;
      all_done = all_done && done[k];
    }
    if (all_done) break;
  }

  double worst = 0.0;
  for (const auto& r : z) {
    double ratio = 0.0;
    if (!acceptable(poly, r, tol, &ratio)) worst = std::max(worst, ratio);
  }
  if (worst > 0.0) {
    std::ostringstream msg;
    msg << "degree " << n << " polynomial: best residuals exceed tolerance by factor " << worst;
    throw NoConvergence(msg.str());
  }
  order_roots(z);
  return z;
}

std::vector<Complex> preimages(const Poly1& poly, Complex c, double tol) {
  return roots(poly.minus_constant(c), tol);
}

std::vector<Complex> vertical_preimages(const SkewProduct& sp, Complex z, Complex c, double tol) {
  return preimages(sp.fiber_poly().fiber(z), c, tol);
}

}  // namespace skewfatou
