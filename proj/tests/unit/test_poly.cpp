#include <doctest.h>

#include <random>

#include "skewfatou/errors.hpp"
#include "skewfatou/poly.hpp"

using namespace skewfatou;

namespace {

SkewProduct example_9_6() {
  return SkewProduct(2, Poly1({-6.0, 0.0, 1.0}), FiberPoly({{0, 2, 1.0}, {0, 0, 3.0}, {1, 0, -1.0}}));
}

}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("horner evaluation matches the expanded form") {
    const Poly1 p({Complex(1, 2), Complex(-3, 0.5), Complex(0, 1), 1.0});
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 100; ++i) {
      const Complex x(u(rng), u(rng));
      const Complex ref = Complex(1, 2) + Complex(-3, 0.5) * x + Complex(0, 1) * x * x + x * x * x;
      CHECK(std::abs(p(x) - ref) <= 1e-12 * (1 + std::abs(ref)));
      const auto [v, dv] = p.eval_with_derivative(x);
      CHECK(std::abs(v - ref) <= 1e-12 * (1 + std::abs(ref)));
      CHECK(std::abs(dv - p.derivative()(x)) <= 1e-12 * (1 + std::abs(dv)));
    }
  }

  TEST_CASE("composition and arithmetic") {
    const Poly1 p({-1.0, 0.0, 1.0});
    const Poly1 pp = p.compose(p);
    CHECK(pp.degree() == 4);
    CHECK(pp == Poly1({0.0, 0.0, -2.0, 0.0, 1.0}));
    const Poly1 prod = p * p;
    CHECK(prod == Poly1({1.0, 0.0, -2.0, 0.0, 1.0}));
    CHECK((p + Poly1({1.0})) == Poly1::monomial(2));
    CHECK(p.minus_constant(2.0) == Poly1({-3.0, 0.0, 1.0}));
  }

  TEST_CASE("from_roots gives a monic polynomial vanishing at the roots") {
    const std::vector<Complex> r{Complex(1, 1), -2.0, Complex(0, 3)};
    const Poly1 p = from_roots(r);
    CHECK(p.is_monic());
    for (const auto& x : r) CHECK(std::abs(p(x)) < 1e-12);
  }

  TEST_CASE("fiber polynomial evaluation, derivative and homogeneous part") {
    const FiberPoly q({{0, 2, 1.0}, {0, 0, 3.0}, {1, 0, -1.0}, {1, 0, 0.0}});
    CHECK(q.terms().size() == 3);
    CHECK(q.total_degree() == 2);
    CHECK(q.w_degree() == 2);
    CHECK(q(Complex(-2.0), 0.0) == Complex(5.0));
    CHECK(q.fiber(-2.0) == Poly1({5.0, 0.0, 1.0}));
    CHECK(q.dw() == FiberPoly({{0, 1, 2.0}}));
    CHECK(q.homogeneous_part(2) == FiberPoly({{0, 2, 1.0}}));
    const FiberPoly merged({{1, 1, 2.0}, {1, 1, -2.0}});
    CHECK(merged.terms().empty());
  }

  TEST_CASE("skew product validation") {
    CHECK_THROWS_AS(SkewProduct(1, Poly1({0.0, 1.0}), FiberPoly({{0, 1, 1.0}})), DegreeTooLow);
    CHECK_THROWS_AS(SkewProduct(2, Poly1({0.0, 0.0, 2.0}), FiberPoly({{0, 2, 1.0}})), NotMonic);
    CHECK_THROWS_AS(SkewProduct(2, Poly1({0.0, 0.0, 1.0}), FiberPoly({{1, 2, 1.0}})), DegreeMismatch);
    CHECK_THROWS_AS(SkewProduct(2, Poly1({0.0, 0.0, 1.0}), FiberPoly({{0, 2, 2.0}})), NotMonic);
  }

  TEST_CASE("infinity map and vertical derivative") {
    const SkewProduct sp = example_9_6();
    CHECK(infinity_map(sp) == Poly1({0.0, 0.0, 1.0}));
    const SkewProduct fa(2, Poly1({0.0, 0.0, 1.0}), FiberPoly({{0, 2, 1.0}, {1, 0, Complex(0.5, 1)}}));
    CHECK(infinity_map(fa) == Poly1({0.0, 0.0, 1.0}));
    const SkewProduct mixed(2, Poly1({0.0, 0.0, 1.0}), FiberPoly({{0, 2, 1.0}, {1, 1, 3.0}, {2, 0, 2.0}}));
    CHECK(infinity_map(mixed) == Poly1({2.0, 3.0, 1.0}));
    CHECK(vertical_derivative(mixed) == FiberPoly({{0, 1, 2.0}, {1, 0, 3.0}}));
    const auto [z1, w1] = eval_f(sp, -2.0, 0.0);
    CHECK(z1 == Complex(-2.0));
    CHECK(w1 == Complex(5.0));
    CHECK_THROWS_AS(eval_f(sp, 1e300, 0.0), Overflow);
  }
}
