#include "skewfatou/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "skewfatou/errors.hpp"
#include "skewfatou/parallel.hpp"
#include "skewfatou/roots.hpp"
#include "skewfatou/spatial.hpp"

namespace skewfatou {

const char* to_string(Ambient a) {
  switch (a) {
    case Ambient::BasePlane:
      return "base-plane";
    case Ambient::FiberPlane:
      return "fiber-plane";
    case Ambient::ProductSpace:
      return "product-space";
    case Ambient::InfinityLine:
      return "infinity-line";
  }
  return "?";
}

const char* to_string(Postcritical which) {
  switch (which) {
    case Postcritical::D_p:
      return "D_p";
    case Postcritical::D_Jp:
      return "D_Jp";
    case Postcritical::D_Ap:
      return "D_Ap";
    case Postcritical::D_Pi:
      return "D_Pi";
  }
  return "?";
}

PointCloud::PointCloud(Ambient ambient, CloudMeta meta, std::vector<Complex> first, std::vector<Complex> second,
                       Complex fiber_z)
    : ambient_(ambient), meta_(std::move(meta)), first_(std::move(first)), second_(std::move(second)),
      fiber_z_(fiber_z) {
  if (ambient_ == Ambient::ProductSpace) {
    if (second_.size() != first_.size()) throw InvalidArgument("product cloud needs paired coordinates");
  } else if (!second_.empty()) {
    throw InvalidArgument("planar cloud given a second coordinate");
  }
  for (const auto& c : first_) {
    if (!is_finite(c)) throw InvalidArgument("non-finite point in cloud");
  }
  for (const auto& c : second_) {
    if (!is_finite(c)) throw InvalidArgument("non-finite point in cloud");
  }
}

std::string PointCloud::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "# set=" << meta_.set_name << " sampler=" << meta_.sampler << " depth=" << meta_.depth
      << " seed=" << meta_.seed << "\n";
  for (std::size_t i = 0; i < first_.size(); ++i) {
    out << first_[i].real() << "," << first_[i].imag();
    if (is_product()) out << "," << second_[i].real() << "," << second_[i].imag();
    out << "\n";
  }
  return out.str();
}

std::vector<Complex> sample_julia(const Poly1& map, int n_points, int depth, std::uint64_t seed,
                                  unsigned threads) {
  if (n_points < 1) throw InvalidArgument("n_points must be >= 1");
  if (depth < 1) throw InvalidArgument("depth must be >= 1");
  const Complex start(escape_radius(map) + 1.0, 0.0);
  const int d = map.degree();
  // the last m pulls run through every branch word of length m equally often
  int m = 0;
  for (std::uint64_t span = static_cast<std::uint64_t>(d); m < depth && span <= static_cast<std::uint64_t>(n_points);
       span *= static_cast<std::uint64_t>(d)) {
    ++m;
  }
  std::vector<Complex> out(static_cast<std::size_t>(n_points));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    auto rng = stream_rng(seed, i);
    std::size_t digits = i;
    Complex x = start;
    for (int k = 0; k < depth; ++k) {
      int branch = 0;
      if (k < depth - m) {
        branch = pick(rng, d);
      } else {
        const int shift = depth - 1 - k;
        std::size_t v = digits;
        for (int s = 0; s < shift; ++s) v /= static_cast<std::size_t>(d);
        branch = static_cast<int>(v % static_cast<std::size_t>(d));
      }
      x = preimages(map, x)[static_cast<std::size_t>(branch)];
    }
    out[i] = x;
  });
  return out;
}

PointCloud sample_J_base(const SkewProduct& sp, int n_points, int depth, std::uint64_t seed, unsigned threads) {
  auto pts = sample_julia(sp.base(), n_points, depth, seed, threads);
  return PointCloud(Ambient::BasePlane, {"J_p", "inverse-iteration", depth, seed, 0}, std::move(pts));
}

PointCloud sample_J_infinity(const SkewProduct& sp, int n_points, int depth, std::uint64_t seed,
                             unsigned threads) {
  auto pts = sample_julia(infinity_map(sp), n_points, depth, seed, threads);
  return PointCloud(Ambient::InfinityLine, {"J_Pi", "inverse-iteration", depth, seed, 0}, std::move(pts));
}

std::vector<BaseOrbit> sample_base_orbits(const Poly1& map, int n, int length, int depth, std::uint64_t seed,
                                          unsigned threads) {
  if (n < 1 || length < 0) throw InvalidArgument("sample_base_orbits: bad sizes");
  const auto ends = sample_julia(map, n, depth, seed, threads);
  const int d = map.degree();
  std::vector<BaseOrbit> out(static_cast<std::size_t>(n));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    auto rng = stream_rng(seed, i, 0x0b17);
    std::vector<Complex> chain(static_cast<std::size_t>(length) + 1);
    chain[static_cast<std::size_t>(length)] = ends[i];
    for (int k = length; k-- > 0;) {
      chain[static_cast<std::size_t>(k)] =
          preimages(map, chain[static_cast<std::size_t>(k) + 1])[static_cast<std::size_t>(pick(rng, d))];
    }
    out[i].prefix = std::move(chain);
  });
  return out;
}

BaseOrbit forward_orbit(const Poly1& map, Complex z0, int length) {
  const double radius = escape_radius(map);
  BaseOrbit orbit;
  orbit.prefix.push_back(z0);
  Complex z = z0;
  for (int n = 0; n < length; ++n) {
    if (std::abs(z) > radius) break;
    z = map(z);
    // exact recurrence: the orbit is (pre)periodic in floating point
    const auto it = std::find(orbit.prefix.begin(), orbit.prefix.end(), z);
    if (it != orbit.prefix.end()) {
      orbit.cycle.assign(it, orbit.prefix.end());
      orbit.prefix.erase(it, orbit.prefix.end());
      return orbit;
    }
    orbit.prefix.push_back(z);
  }
  return orbit;
}

PointCloud sample_J_fiber_along(const SkewProduct& sp, const BaseOrbit& orbit, int n_points, int depth,
                                std::uint64_t seed, unsigned threads) {
  if (n_points < 1) throw InvalidArgument("n_points must be >= 1");
  const std::size_t avail = orbit.length() == 0 ? 0 : orbit.length() - 1;
  const int steps = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(depth), avail));
  double rho = 0.0;
  for (int k = 0; k <= steps; ++k) rho = std::max(rho, std::abs(orbit.at(static_cast<std::size_t>(k))));
  const Complex start(2.0 * fiber_escape_radius(sp, rho + 1.0), 0.0);
  const int d = sp.degree();
  std::vector<Poly1> fibers;
  fibers.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k) fibers.push_back(sp.fiber_poly().fiber(orbit.at(static_cast<std::size_t>(k))));

  std::vector<Complex> out(static_cast<std::size_t>(n_points));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    auto rng = stream_rng(seed, i, 0xf1be);
    Complex w = start;
    for (int k = steps; k-- > 0;) {
      w = preimages(fibers[static_cast<std::size_t>(k)], w)[static_cast<std::size_t>(pick(rng, d))];
    }
    out[i] = w;
  });
  return PointCloud(Ambient::FiberPlane, {"J_z", "fiber-pullback", steps, seed, 0}, std::move(out), {},
                    orbit.start());
}

PointCloud sample_J_fiber(const SkewProduct& sp, Complex z0, int n_points, int depth, std::uint64_t seed,
                          unsigned threads) {
  return sample_J_fiber_along(sp, forward_orbit(sp.base(), z0, depth), n_points, depth, seed, threads);
}

PointCloud sample_J2(const SkewProduct& sp, int n_fibers, int per_fiber, std::uint64_t seed, unsigned threads,
                     int depth) {
  if (n_fibers < 1 || per_fiber < 1) throw InvalidArgument("sample_J2: sizes must be >= 1");
  const auto orbits = sample_base_orbits(sp.base(), n_fibers, depth, depth, seed, threads);
  std::vector<Complex> zs, ws;
  zs.reserve(static_cast<std::size_t>(n_fibers) * static_cast<std::size_t>(per_fiber));
  ws.reserve(zs.capacity());
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const auto fiber = sample_J_fiber_along(sp, orbits[i], per_fiber, depth, splitmix64(seed + i), threads);
    for (const auto& w : fiber.points()) {
      zs.push_back(orbits[i].start());
      ws.push_back(w);
    }
  }
  return PointCloud(Ambient::ProductSpace, {"J_2", "fibered-pullback", depth, seed, 0}, std::move(zs),
                    std::move(ws));
}

namespace {

bool same_cycle(const Cycle& a, const Cycle& b) {
  for (const auto& x : a.points) {
    for (const auto& y : b.points) {
      if (std::abs(x - y) <= 1e-6) return true;
    }
  }
  return false;
}

Cycle make_cycle(const Poly1& map, Complex x, int period) {
  Cycle c;
  c.period = period;
  c.multiplier = 1.0;
  for (int i = 0; i < period; ++i) {
    c.points.push_back(x);
    const auto [v, dv] = map.eval_with_derivative(x);
    c.multiplier *= dv;
    x = v;
  }
  return c;
}

}  // namespace

CycleSearch find_attracting_cycles(const Poly1& map, int budget) {
  CycleSearch out;
  if (map.degree() < 2) return out;
  const double radius = escape_radius(map);
  for (const auto& crit : roots(map.derivative())) {
    Complex x = crit;
    bool escaped = false;
    bool closed = false;
    int steps = 0;
    int next_check = 16;
    while (steps < budget && !escaped && !closed) {
      while (steps < next_check && steps < budget) {
        x = map(x);
        ++steps;
        if (std::abs(x) > radius) {
          escaped = true;
          break;
        }
      }
      if (escaped) break;
      // look for the smallest k with |map^k(x) - x| <= tol
      Complex y = x;
      for (int k = 1; k <= kMaxCyclePeriod; ++k) {
        y = map(y);
        if (std::abs(y - x) <= kCycleClosureTol) {
          Cycle c = make_cycle(map, x, k);
          closed = true;
          if (std::abs(c.multiplier) < 1.0 &&
              std::none_of(out.cycles.begin(), out.cycles.end(), [&](const Cycle& o) { return same_cycle(o, c); })) {
            out.cycles.push_back(std::move(c));
          }
          break;
        }
      }
      next_check *= 2;
    }
    if (!escaped && !closed) ++out.unresolved;
  }
  return out;
}

std::vector<Cycle> attracting_cycles(const Poly1& map, int budget) { return find_attracting_cycles(map, budget).cycles; }

std::vector<Cycle> periodic_cycles(const Poly1& map, int max_period) {
  const int d = map.degree();
  std::vector<Cycle> out;
  const Complex anchor = sample_julia(map, 1, kDefaultSampleDepth, 7)[0];
  std::size_t words_used = 0;
  constexpr std::size_t kMaxWords = 4096;
  for (int n = 1; n <= max_period; ++n) {
    const auto count = static_cast<std::size_t>(std::pow(d, n));
    if (words_used + count > kMaxWords) break;
    words_used += count;
    for (std::size_t word = 0; word < count; ++word) {
      std::vector<int> letters(static_cast<std::size_t>(n));
      std::size_t rem = word;
      for (auto& l : letters) {
        l = static_cast<int>(rem % static_cast<std::size_t>(d));
        rem /= static_cast<std::size_t>(d);
      }
      Complex x = anchor;
      try {
        for (int rep = 0; rep < 30; ++rep) {
          for (int l : letters) x = preimages(map, x)[static_cast<std::size_t>(l)];
        }
      } catch (const NoConvergence&) {
        continue;
      }
      // Newton on map^n(x) - x
      for (int it = 0; it < 8; ++it) {
        Complex v = x, dv = 1.0;
        for (int k = 0; k < n; ++k) {
          const auto [fv, fdv] = map.eval_with_derivative(v);
          dv *= fdv;
          v = fv;
        }
        const Complex denom = dv - 1.0;
        if (std::abs(denom) < 1e-12) break;
        const Complex step = (v - x) / denom;
        x -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(x))) break;
      }
      Complex v = x;
      int minimal = 0;
      for (int k = 1; k <= n; ++k) {
        v = map(v);
        if (std::abs(v - x) <= 1e-8 * (1.0 + std::abs(x))) {
          minimal = k;
          break;
        }
      }
      if (minimal != n) continue;
      Cycle c = make_cycle(map, x, n);
      if (std::none_of(out.begin(), out.end(), [&](const Cycle& o) { return same_cycle(o, c); })) {
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

Poly1 fiber_return_map(const SkewProduct& sp, const Cycle& cycle) {
  const double coeffs = std::pow(static_cast<double>(sp.degree()), cycle.period);
  if (coeffs > 4096.0) {
    throw PeriodTooLarge("d^k = " + std::to_string(static_cast<long long>(coeffs)) + " > 4096");
  }
  Poly1 acc({0.0, 1.0});
  for (const auto& z : cycle.points) acc = sp.fiber_poly().fiber(z).compose(acc);
  return acc;
}

PointCloud sample_J_Ap(const SkewProduct& sp, const std::vector<Cycle>& cycles, int per_fiber, std::uint64_t seed,
                       unsigned threads) {
  std::vector<Complex> zs, ws;
  for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
    const auto& cyc = cycles[ci];
    std::vector<Complex> base_ws;
    bool done = false;
    try {
      const Poly1 ret = fiber_return_map(sp, cyc);
      if (ret.degree() <= 64) {
        const int depth = std::max(8, kDefaultSampleDepth / cyc.period);
        base_ws = sample_julia(ret, per_fiber, depth, splitmix64(seed + ci), threads);
        done = true;
      }
    } catch (const PeriodTooLarge&) {
    }
    if (!done) {
      BaseOrbit orbit;
      orbit.cycle = cyc.points;
      base_ws = sample_J_fiber_along(sp, orbit, per_fiber, kDefaultSampleDepth, splitmix64(seed + ci), threads)
                    .points();
    }
    // carry the z_0 fiber samples around the cycle
    for (auto w : base_ws) {
      for (int j = 0; j < cyc.period; ++j) {
        const Complex z = cyc.points[static_cast<std::size_t>(j)];
        zs.push_back(z);
        ws.push_back(w);
        w = sp.q(z, w);
        if (!is_finite(w)) break;
      }
    }
  }
  return PointCloud(Ambient::ProductSpace, {"J_Ap", "return-map", kDefaultSampleDepth, seed, 0}, std::move(zs),
                    std::move(ws));
}

namespace {

struct Tail {
  std::vector<Complex> z, w;
  bool escaped = false;
};

}  // namespace

PointCloud postcritical_cloud(const SkewProduct& sp, Postcritical which, const PostcriticalOptions& opt) {
  if (opt.n_iter <= opt.transient) throw InvalidArgument("n_iter must exceed transient");
  const auto params = escape_params(sp);
  CloudMeta meta{to_string(which), "critical-orbits", opt.transient, opt.seed, 0};

  auto planar = [&](const Poly1& map, Ambient ambient) {
    const double radius = escape_radius(map);
    std::vector<Complex> pts;
    for (const auto& c : roots(map.derivative())) {
      Complex x = c;
      for (int n = 0; n <= opt.n_iter; ++n) {
        if (std::abs(x) > radius) {
          ++meta.escaping_orbits;
          break;
        }
        if (n >= opt.transient && n >= 1) pts.push_back(x);
        x = map(x);
      }
    }
    return PointCloud(ambient, meta, std::move(pts));
  };

  switch (which) {
    case Postcritical::D_p:
      return planar(sp.base(), Ambient::BasePlane);
    case Postcritical::D_Pi:
      return planar(infinity_map(sp), Ambient::InfinityLine);
    case Postcritical::D_Jp:
    case Postcritical::D_Ap:
      break;
  }

  std::vector<BaseOrbit> orbits;
  if (which == Postcritical::D_Jp) {
    orbits = sample_base_orbits(sp.base(), opt.n_starts, opt.n_iter, kDefaultSampleDepth, opt.seed, opt.threads);
  } else {
    for (const auto& cyc : attracting_cycles(sp.base(), opt.cycle_budget)) {
      for (std::size_t s = 0; s < cyc.points.size(); ++s) {
        BaseOrbit o;
        o.cycle.assign(cyc.points.begin() + static_cast<std::ptrdiff_t>(s), cyc.points.end());
        o.cycle.insert(o.cycle.end(), cyc.points.begin(), cyc.points.begin() + static_cast<std::ptrdiff_t>(s));
        orbits.push_back(std::move(o));
      }
    }
  }

  const FiberPoly dq = vertical_derivative(sp);
  std::vector<std::vector<Tail>> tails(orbits.size());
  parallel_for(orbits.size(), opt.threads, [&](std::size_t i) {
    const auto& orbit = orbits[i];
    const Poly1 crit_poly = dq.fiber(orbit.start());
    if (crit_poly.degree() < 1) return;
    for (const auto& wc : roots(crit_poly)) {
      Tail tail;
      Complex w = wc;
      for (int n = 0; n <= opt.n_iter; ++n) {
        if (std::abs(w) > params.r_fiber || static_cast<std::size_t>(n) >= orbit.length()) {
          tail.escaped = std::abs(w) > params.r_fiber;
          break;
        }
        const Complex z = orbit.at(static_cast<std::size_t>(n));
        if (n >= opt.transient && n >= 1) {
          tail.z.push_back(z);
          tail.w.push_back(w);
        }
        w = sp.q(z, w);
      }
      tails[i].push_back(std::move(tail));
    }
  });

  std::vector<Complex> zs, ws;
  for (const auto& per_orbit : tails) {
    for (const auto& t : per_orbit) {
      if (t.escaped) ++meta.escaping_orbits;
      zs.insert(zs.end(), t.z.begin(), t.z.end());
      ws.insert(ws.end(), t.w.begin(), t.w.end());
    }
  }
  return PointCloud(Ambient::ProductSpace, meta, std::move(zs), std::move(ws));
}

namespace {

std::vector<Coords> coords_of(const PointCloud& c) {
  std::vector<Coords> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i] = {c.z()[i].real(), c.z()[i].imag(), 0.0, 0.0};
    if (c.is_product()) {
      out[i][2] = c.w()[i].real();
      out[i][3] = c.w()[i].imag();
    }
  }
  return out;
}

void check_compatible(const PointCloud& a, const PointCloud& b) {
  if (a.ambient() != b.ambient()) {
    throw AmbientMismatch(std::string(to_string(a.ambient())) + " vs " + to_string(b.ambient()));
  }
  if (a.ambient() == Ambient::FiberPlane && a.fiber_z() != b.fiber_z()) {
    throw AmbientMismatch("fiber clouds over different base points");
  }
}

double directed_max(const std::vector<Coords>& from, const GridIndex& to) {
  double acc = 0.0;
  for (const auto& q : from) acc = std::max(acc, to.nearest(q));
  return acc;
}

}  // namespace

ClosestPair closest_pair(const PointCloud& a, const PointCloud& b) {
  check_compatible(a, b);
  ClosestPair best;
  if (a.empty() || b.empty()) return best;
  const int dims = a.is_product() ? 4 : 2;
  const auto ca = coords_of(a);
  const auto cb = coords_of(b);
  std::vector<Coords> all = ca;
  all.insert(all.end(), cb.begin(), cb.end());
  const double cell = bounding_diameter(all, dims) / std::sqrt(static_cast<double>(all.size()));
  // index the larger cloud, query with the smaller
  const bool swap = ca.size() > cb.size();
  const auto& queries = swap ? cb : ca;
  const GridIndex index(swap ? ca : cb, dims, cell);
  for (std::size_t i = 0; i < queries.size(); ++i) {
    std::size_t j = 0;
    const double dist = index.nearest(queries[i], &j);
    if (dist < best.distance) {
      best.distance = dist;
      best.first = swap ? j : i;
      best.second = swap ? i : j;
    }
  }
  return best;
}

double min_distance(const PointCloud& a, const PointCloud& b) { return closest_pair(a, b).distance; }

double hausdorff_distance(const PointCloud& a, const PointCloud& b) {
  check_compatible(a, b);
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  const int dims = a.is_product() ? 4 : 2;
  const auto ca = coords_of(a);
  const auto cb = coords_of(b);
  const GridIndex ia(ca, dims), ib(cb, dims);
  return std::max(directed_max(ca, ib), directed_max(cb, ia));
}

}  // namespace skewfatou
