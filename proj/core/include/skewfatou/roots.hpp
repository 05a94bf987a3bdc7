#pragma once

#include <vector>

#include "skewfatou/poly.hpp"

namespace skewfatou {

/// Default residual tolerance used by callers that do not care.
inline constexpr double kRootTol = 1e-10;

/// All degree-many roots (with multiplicity) of a polynomial of degree >= 1,
/// by Aberth iteration started from equally spaced points on the circle of
/// radius 1 + max|a_k / a_n|. Every returned root satisfies
/// |poly(r)| <= tol * (1 + |r|)^n * max|coeff|; otherwise NoConvergence.
///
/// Roots are returned in a fixed order: increasing real part, ties (within
/// 1e-9 relative) broken by increasing imaginary part.
std::vector<Complex> roots(const Poly1& poly, double tol = kRootTol);

/// The d solutions w of q(z, w) = c, same order and tolerance as roots().
std::vector<Complex> vertical_preimages(const SkewProduct& sp, Complex z, Complex c,
                                        double tol = kRootTol);

/// Solutions x of poly(x) = c.
std::vector<Complex> preimages(const Poly1& poly, Complex c, double tol = kRootTol);

}  // namespace skewfatou
