#pragma once

// Test-side reference computations, independent of the library's code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

/// Green's function of z^2 + c at z with 200-bit arithmetic. Iterates until
/// |z| > 1e40, then uses log|z_n| / 2^n (the remainder is below 1e-80).
inline double green_quadratic(std::complex<double> c, std::complex<double> z0, int n_max = 4000) {
  Big x = z0.real(), y = z0.imag();
  const Big cr = c.real(), ci = c.imag();
  const Big big = Big(1e80);
  Big scale = 1;
  for (int n = 0; n < n_max; ++n) {
    const Big r2 = x * x + y * y;
    if (r2 > big) return static_cast<double>(log(r2) / 2 / scale);
    const Big nx = x * x - y * y + cr;
    y = 2 * x * y + ci;
    x = nx;
    scale *= 2;
  }
  return 0.0;
}

/// Critical orbit of w^2 + a stays in |w| <= 2 for n_max steps.
inline bool in_mandelbrot(std::complex<double> a, int n_max = 1000) {
  std::complex<double> w = 0.0;
  for (int k = 0; k < n_max; ++k) {
    w = w * w + a;
    if (std::norm(w) > 4.0) return false;
  }
  return true;
}

/// O(nm) nearest distance between two planar sets.
inline double brute_min_distance(const std::vector<std::complex<double>>& a,
                                 const std::vector<std::complex<double>>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : a) {
    for (const auto& q : b) best = std::min(best, std::abs(p - q));
  }
  return best;
}

/// Equilibrium measure of {Re z < t} for the Cantor set of z^2 - c (c > 2),
/// computed exactly by the dyadic tree of real preimage intervals to `depth`.
inline double cantor_measure_left_of(double c, double t, int depth) {
  // intervals of level k: preimages of [-r, r] with r = (1 + sqrt(1 + 4c)) / 2
  const double r = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * c));
  std::vector<std::pair<double, double>> level{{-r, r}};
  for (int k = 0; k < depth; ++k) {
    std::vector<std::pair<double, double>> next;
    for (const auto& [lo, hi] : level) {
      const double a = std::sqrt(std::max(0.0, lo + c)), b = std::sqrt(hi + c);
      next.emplace_back(-b, -a);
      next.emplace_back(a, b);
    }
    level.swap(next);
  }
  double mass = 0.0;
  const double unit = std::ldexp(1.0, -depth);
  for (const auto& [lo, hi] : level) {
    if (hi < t) mass += unit;
  }
  return mass;
}

}  // namespace oracle
