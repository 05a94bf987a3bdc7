#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "skewfatou/errors.hpp"
#include "skewfatou/potential.hpp"

using namespace skewfatou;

namespace {

SkewProduct quadratic(Complex c, std::vector<Term> q) {
  return SkewProduct(2, Poly1({c, 0.0, 1.0}), FiberPoly(std::move(q)));
}

}  // namespace

TEST_SUITE("potential") {
  TEST_CASE("base potential agrees with a 200-bit reference") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-4, 4);
    for (Complex c : {Complex(-6.0), Complex(-1.0), Complex(0, 1), Complex(0.3, 0.5)}) {
      const PotentialEvaluator pot(quadratic(c, {{0, 2, 1.0}}));
      for (int i = 0; i < 200; ++i) {
        const Complex z(u(rng), u(rng));
        const GreenValue g = pot.green_base(z);
        const double ref = oracle::green_quadratic(c, z);
        CHECK(std::abs(g.value - ref) <= 1e-12 * (1.0 + ref));
        CHECK(std::abs(g.value - ref) <= g.error_bound + 1e-12 * (1.0 + ref));
      }
    }
  }

  TEST_CASE("power map potential is log|z|") {
    for (int d : {2, 3, 5}) {
      const SkewProduct sp(d, Poly1::monomial(d), FiberPoly({{0, d, 1.0}}));
      const PotentialEvaluator pot(sp);
      for (double r : {1.0001, 1.5, 3.0, 1e3, 1e7}) {
        const Complex z = std::polar(r, 0.7);
        CHECK(std::abs(pot.green_base(z).value - std::log(r)) <= 1e-12 * (1 + std::log(r)));
      }
      CHECK(pot.green_base(0.5).value == 0.0);
      CHECK(pot.in_base(0.99) == Membership::Inside);
      CHECK(pot.in_base(1.01) == Membership::Outside);
    }
  }

  TEST_CASE("homogeneity G(p(z)) = d G(z)") {
    const SkewProduct sp = quadratic(-6.0, {{0, 2, 1.0}});
    const PotentialEvaluator pot(sp);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int i = 0; i < 300; ++i) {
      const Complex z(u(rng), u(rng));
      const double g = pot.green_base(z).value;
      if (g == 0.0) continue;
      CHECK(std::abs(pot.green_base(sp.p(z)).value - 2.0 * g) <= 1e-9 * (1 + g));
    }
  }

  TEST_CASE("full potential is the max of base and fiber potentials") {
    const SkewProduct sp = quadratic(-6.0, {{0, 2, 1.0}, {0, 0, 3.0}, {1, 0, -1.0}});
    const PotentialEvaluator pot(sp);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int i = 0; i < 300; ++i) {
      const Complex z(u(rng), u(rng)), w(u(rng), u(rng));
      const double g = pot.green_full(z, w).value;
      const double m = std::max(pot.green_base(z).value, pot.green_fiber(z, w).value);
      CHECK(std::abs(g - m) <= 1e-9);
      CHECK(pot.green_relative(z, w).value >= 0.0);
    }
  }

  TEST_CASE("escape radius doubles points outside it") {
    const Poly1 p({Complex(1, -2), 0.5, Complex(0, 3), 1.0});
    const double r = escape_radius(p);
    CHECK(r == doctest::Approx(std::max(2.0 * (std::sqrt(5.0) + 0.5 + 3.0), std::sqrt(5.0) + 0.5 + 3.0 + 2.0)));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> t(0, 6.283185307179586);
    for (int i = 0; i < 500; ++i) {
      const Complex x = std::polar(r * (1.0 + 1e-9 + i * 0.01), t(rng));
      CHECK(std::abs(p(x)) >= 2.0 * std::abs(x) * (1 - 1e-12));
    }
  }

  TEST_CASE("fiber escape radius doubles w over the disk") {
    const SkewProduct sp = quadratic(-6.0, {{0, 2, 1.0}, {0, 0, 3.0}, {1, 0, -1.0}});
    const double rho = 4.0;
    const double r = fiber_escape_radius(sp, rho);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> t(0, 6.283185307179586), s(0, 1);
    for (int i = 0; i < 500; ++i) {
      const Complex z = std::polar(rho * std::sqrt(s(rng)), t(rng));
      const Complex w = std::polar(r * (1.0 + 1e-9 + s(rng)), t(rng));
      CHECK(std::abs(sp.q(z, w)) >= 2.0 * std::abs(w) * (1 - 1e-12));
    }
  }

  TEST_CASE("fiber membership readings agree over K_p") {
    // product (z^2, w^2 - 1): K_z is the basilica for every z
    const PotentialEvaluator pot(quadratic(0.0, {{0, 2, 1.0}, {0, 0, -1.0}}));
    for (Complex w : {Complex(0.0), Complex(-1.0), Complex(0.2, 0.1)}) {
      const auto m = pot.fiber_membership(Complex(0.3, 0.4), w);
      CHECK(m.relative == Membership::Inside);
      CHECK_FALSE(m.disagree());
    }
    CHECK(pot.in_fiber(0.5, 2.0) == Membership::Outside);
    // over an escaping z the relative reading still sees the basilica
    CHECK(pot.in_fiber(2.0, 0.0) == Membership::Inside);
    CHECK(pot.fiber_membership(2.0, 0.0).composition == Membership::Inside);
  }

  TEST_CASE("infinity potential uses the line map") {
    const PotentialEvaluator pot(quadratic(-6.0, {{0, 2, 1.0}, {2, 0, -1.0}}));
    // f_Pi(u) = u^2 - 1
    CHECK(pot.infinity_poly() == Poly1({-1.0, 0.0, 1.0}));
    CHECK(pot.in_infinity(0.0) == Membership::Inside);
    CHECK(pot.green_infinity(3.0).value == doctest::Approx(oracle::green_quadratic(-1.0, 3.0)).epsilon(1e-12));
  }

  TEST_CASE("slow escapes pass through undecided as the budget grows") {
    // inside the radius for the whole budget, then left it without reaching
    // bailout, then escaped
    const SkewProduct sp = quadratic(-2.0, {{0, 2, 1.0}});
    int stage = 0;
    bool saw_undecided = false;
    for (int n = 1; n <= 40; ++n) {
      const PotentialEvaluator pot(sp, escape_params(sp, n, 1e8));
      const Membership m = pot.in_base(2.0001);
      const int s = m == Membership::Inside ? 0 : m == Membership::Undecided ? 1 : 2;
      CHECK(s >= stage);
      stage = s;
      if (m == Membership::Undecided) {
        saw_undecided = true;
        CHECK(pot.green_base(2.0001).ambiguous);
      }
    }
    CHECK(saw_undecided);
    CHECK(stage == 2);
  }

  TEST_CASE("parameter overrides are validated") {
    const SkewProduct sp = quadratic(0.0, {{0, 2, 1.0}});
    CHECK_THROWS_AS(escape_params(sp, 0, 1e8), InvalidArgument);
    CHECK(escape_params(sp, 100, 1.0).bailout >= escape_params(sp).r_base);
  }
}
