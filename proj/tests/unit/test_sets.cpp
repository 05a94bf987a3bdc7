#include <doctest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "skewfatou/errors.hpp"
#include "skewfatou/sets.hpp"

using namespace skewfatou;

namespace {

SkewProduct quadratic(Complex c, std::vector<Term> q) {
  return SkewProduct(2, Poly1({c, 0.0, 1.0}), FiberPoly(std::move(q)));
}

}  // namespace

TEST_SUITE("sets") {
  TEST_CASE("julia samples of z^2 lie on the unit circle") {
    const auto pts = sample_julia(Poly1::monomial(2), 1000, 24, 1);
    REQUIRE(pts.size() == 1000);
    for (const auto& z : pts) CHECK(std::abs(std::abs(z) - 1.0) < 1e-6);
  }

  TEST_CASE("julia samples of z^2 - 2 fill [-2, 2]") {
    const auto pts = sample_julia(Poly1({-2.0, 0.0, 1.0}), 2000, 24, 4);
    double lo = 0, hi = 0;
    for (const auto& z : pts) {
      CHECK(std::abs(z.imag()) < 1e-5);
      CHECK(std::abs(z.real()) <= 2.0 + 1e-9);
      lo = std::min(lo, z.real());
      hi = std::max(hi, z.real());
    }
    CHECK(lo < -1.9);
    CHECK(hi > 1.9);
  }

  TEST_CASE("samplers are deterministic and thread-count independent") {
    const Poly1 p({Complex(-0.12, 0.75), 0.0, 1.0});
    CHECK(sample_julia(p, 777, 20, 9, 1) == sample_julia(p, 777, 20, 9, 4));
    CHECK(sample_julia(p, 777, 20, 9) != sample_julia(p, 777, 20, 10));
    const SkewProduct sp = quadratic(-6.0, {{0, 2, 1.0}, {0, 0, Complex(0, 1)}});
    CHECK(sample_J2(sp, 16, 8, 3, 1).to_csv() == sample_J2(sp, 16, 8, 3, 3).to_csv());
  }

  TEST_CASE("cloud csv carries metadata") {
    const PointCloud c = sample_J_base(quadratic(0.0, {{0, 2, 1.0}}), 4, 10, 7);
    const std::string csv = c.to_csv();
    CHECK(csv.rfind("# set=J_p", 0) == 0);
    CHECK(csv.find("seed=7") != std::string::npos);
  }

  TEST_CASE("base orbit segments satisfy the recurrence") {
    const Poly1 p({-6.0, 0.0, 1.0});
    for (const auto& orbit : sample_base_orbits(p, 20, 50, 24, 2)) {
      REQUIRE(orbit.length() == 51);
      for (std::size_t k = 0; k + 1 < 51; ++k) {
        CHECK(std::abs(p(orbit.at(k)) - orbit.at(k + 1)) <= 1e-9 * (1 + std::abs(orbit.at(k + 1))));
      }
    }
  }

  TEST_CASE("forward orbit detects preperiodic cycles exactly") {
    const BaseOrbit o = forward_orbit(Poly1({-2.0, 0.0, 1.0}), 0.0, 100);
    CHECK(o.cycle.size() == 1);
    CHECK(o.at(50) == Complex(2.0));
    CHECK(o.at(1) == Complex(-2.0));
  }

  TEST_CASE("fiber samples lie on J_z") {
    const SkewProduct sp = quadratic(-6.0, {{0, 2, 1.0}, {0, 0, 3.0}, {1, 0, -1.0}});
    // fiber over the fixed point z = -2 is J(w^2 + 5)
    const PointCloud c = sample_J_fiber(sp, -2.0, 300, 24, 5);
    const PotentialEvaluator pot(SkewProduct(2, Poly1({5.0, 0.0, 1.0}), FiberPoly({{0, 2, 1.0}})));
    for (const auto& w : c.points()) CHECK(pot.green_base(w).value < 1e-5);
  }

  TEST_CASE("cycles of polynomials") {
    const auto att = attracting_cycles(Poly1({-1.0, 0.0, 1.0}), 20000);
    REQUIRE(att.size() == 1);
    CHECK(att[0].period == 2);
    CHECK(std::abs(att[0].multiplier) < 1e-12);

    const auto per = periodic_cycles(Poly1::monomial(2), 3);
    int points = 0;
    for (const auto& c : per) {
      points += c.period;
      for (const auto& z : c.points) CHECK((std::abs(std::abs(z) - 1.0) < 1e-9 || std::abs(z) < 1e-12));
    }
    // fixed points 0, 1 (0 is attracting and not on J) plus 2 + 6 points of period 2, 3
    CHECK(points >= 9);
    CHECK(find_attracting_cycles(Poly1({-2.0, 0.0, 1.0}), 2000).cycles.empty());
  }

  TEST_CASE("fiber return map composes along the cycle") {
    const SkewProduct sp = quadratic(-1.0, {{0, 2, 1.0}, {1, 0, 1.0}});
    const auto att = attracting_cycles(sp.base(), 20000);
    REQUIRE(att.size() == 1);
    const Poly1 r = fiber_return_map(sp, att[0]);
    CHECK(r.degree() == 4);
    const Complex w(0.3, -0.2);
    const Complex z0 = att[0].points[0], z1 = att[0].points[1];
    CHECK(std::abs(r(w) - sp.q(z1, sp.q(z0, w))) < 1e-12);
  }

  TEST_CASE("postcritical cloud of z^2 - 2 is {-2, 2}") {
    PostcriticalOptions opt;
    const PointCloud d = postcritical_cloud(quadratic(-2.0, {{0, 2, 1.0}}), Postcritical::D_p, opt);
    REQUIRE_FALSE(d.empty());
    for (const auto& z : d.points()) CHECK(std::abs(z - 2.0) < 1e-12);
  }

  TEST_CASE("closest pair matches brute force") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g(0, 1);
    std::vector<Complex> a, b;
    for (int i = 0; i < 400; ++i) a.emplace_back(g(rng), g(rng));
    for (int i = 0; i < 700; ++i) b.emplace_back(3 + g(rng), g(rng) * 0.1);
    const PointCloud ca(Ambient::BasePlane, {}, a), cb(Ambient::BasePlane, {}, b);
    const ClosestPair cp = closest_pair(ca, cb);
    CHECK(cp.distance == doctest::Approx(oracle::brute_min_distance(a, b)).epsilon(1e-15));
    CHECK(std::abs(a[cp.first] - b[cp.second]) == doctest::Approx(cp.distance));
    CHECK(min_distance(ca, cb) == cp.distance);
    CHECK(hausdorff_distance(ca, cb) == hausdorff_distance(cb, ca));
    CHECK(hausdorff_distance(ca, ca) == 0.0);
    const PointCloud empty(Ambient::BasePlane, {}, {});
    CHECK(std::isinf(min_distance(ca, empty)));
    const PointCloud line(Ambient::InfinityLine, {}, a);
    CHECK_THROWS_AS(min_distance(ca, line), AmbientMismatch);
  }
}
