#include "skewfatou/current_link.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "skewfatou/errors.hpp"
#include "skewfatou/parallel.hpp"
#include "skewfatou/potential.hpp"
#include "skewfatou/roots.hpp"
#include "skewfatou/sets.hpp"
#include "skewfatou/spatial.hpp"

namespace skewfatou {
namespace {

constexpr std::uint64_t kMarginSalt = 0x6d61726769;
constexpr double kMinSeparation = 1e-4;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

double segment_distance(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  const double t = std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

double signed_area(const std::vector<Complex>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex p = v[i], q = v[(i + 1) % v.size()];
    a += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * a;
}

Coords to_coords(Complex z) { return {z.real(), z.imag(), 0.0, 0.0}; }

double flux(const Poly1& p, const Region& region, double h, int n_max) {
  const double eps = 0.5 * h;
  auto normal_derivative = [&](Complex x, Complex n) {
    return (green_polynomial(p, x + eps * n, n_max) - green_polynomial(p, x - eps * n, n_max)) / (2.0 * eps);
  };
  double total = 0.0;
  if (region.shape() == Region::Shape::Polygon) {
    const auto& v = region.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Complex a = v[i], b = v[(i + 1) % v.size()];
      const double len = std::abs(b - a);
      if (len == 0.0) continue;
      const Complex n = Complex(0.0, -1.0) * (b - a) / len;
      const int m = std::max(1, static_cast<int>(std::ceil(len / h)));
      double edge = 0.5 * (normal_derivative(a, n) + normal_derivative(b, n));
      for (int k = 1; k < m; ++k) edge += normal_derivative(a + (b - a) * (static_cast<double>(k) / m), n);
      total += edge * len / m;
    }
  } else {
    const auto& c = region.centers();
    const auto& r = region.radii();
    for (std::size_t i = 0; i < c.size(); ++i) {
      const int m = std::max(8, static_cast<int>(std::ceil(2.0 * std::numbers::pi * r[i] / h)));
      const double weight = 2.0 * std::numbers::pi * r[i] / m;
      for (int k = 0; k < m; ++k) {
        const Complex n = std::polar(1.0, 2.0 * std::numbers::pi * k / m);
        const Complex x = c[i] + r[i] * n;
        bool covered = false;
        for (std::size_t j = 0; j < c.size() && !covered; ++j) {
          covered = j != i && std::abs(x - c[j]) < r[j];
        }
        if (!covered) total += weight * normal_derivative(x, n);
      }
    }
  }
  return total / (2.0 * std::numbers::pi);
}

MeasureEstimate count_fraction(const Poly1& p, const std::function<bool(Complex)>& in_set,
                               const MeasureOptions& opt) {
  if (opt.n < 256) throw InvalidArgument("harmonic measure needs n >= 256");
  const auto pts = sample_julia(p, opt.n, opt.depth, opt.seed, opt.threads);
  std::size_t hits = 0;
  for (const auto& z : pts) hits += in_set(z) ? 1 : 0;
  MeasureEstimate m;
  m.n_samples = opt.n;
  m.value = static_cast<double>(hits) / opt.n;
  m.std_error = std::sqrt(m.value * (1.0 - m.value) / opt.n);
  m.flux_value = kNaN;
  m.cross_check_delta = kNaN;
  return m;
}

}  // namespace

const char* to_string(MeasureMethod m) {
  return m == MeasureMethod::PreimageCount ? "preimage-count" : "boundary-flux";
}

Region Region::polygon(std::vector<Complex> vertices) {
  if (vertices.size() < 3) throw InvalidArgument("polygon needs at least 3 vertices");
  if (signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
  Region r;
  r.shape_ = Shape::Polygon;
  r.vertices_ = std::move(vertices);
  return r;
}

Region Region::disks(std::vector<Complex> centers, std::vector<double> radii) {
  if (centers.empty() || centers.size() != radii.size()) throw InvalidArgument("disk union needs matching centers and radii");
  for (double rad : radii) {
    if (!(rad > 0.0)) throw InvalidArgument("disk radius must be positive");
  }
  Region r;
  r.shape_ = Shape::DiskUnion;
  r.centers_ = std::move(centers);
  r.radii_ = std::move(radii);
  return r;
}

bool Region::contains(Complex z) const {
  if (shape_ == Shape::DiskUnion) {
    for (std::size_t i = 0; i < centers_.size(); ++i) {
      if (std::abs(z - centers_[i]) < radii_[i]) return true;
    }
    return false;
  }
  bool inside = false;
  for (std::size_t i = 0, j = vertices_.size() - 1; i < vertices_.size(); j = i++) {
    const Complex a = vertices_[i], b = vertices_[j];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag()) &&
        z.real() < (b.real() - a.real()) * (z.imag() - a.imag()) / (b.imag() - a.imag()) + a.real()) {
      inside = !inside;
    }
  }
  return inside;
}

double Region::boundary_distance(Complex z) const {
  double best = std::numeric_limits<double>::infinity();
  if (shape_ == Shape::Polygon) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      best = std::min(best, segment_distance(z, vertices_[i], vertices_[(i + 1) % vertices_.size()]));
    }
    return best;
  }
  // outside: exact distance to the union; inside: deepest disk (a lower bound)
  double depth = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const double s = std::abs(z - centers_[i]) - radii_[i];
    best = std::min(best, s);
    depth = std::max(depth, -s);
  }
  return best >= 0.0 ? best : depth;
}

double Region::perimeter() const {
  double total = 0.0;
  if (shape_ == Shape::Polygon) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) total += std::abs(vertices_[(i + 1) % vertices_.size()] - vertices_[i]);
  } else {
    for (double r : radii_) total += 2.0 * std::numbers::pi * r;
  }
  return total;
}

MeasureEstimate harmonic_measure(const Poly1& p, Region& region, const MeasureOptions& opt) {
  const auto cloud = sample_julia(p, opt.margin_cloud, opt.depth, opt.seed ^ kMarginSalt, opt.threads);
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& z : cloud) margin = std::min(margin, region.boundary_distance(z));
  region.margin = margin;
  if (!(margin > 0.0)) throw BoundaryTooClose("a J_p sample lies on the region boundary");

  MeasureEstimate m = count_fraction(p, [&](Complex z) { return region.contains(z); }, opt);
  if (opt.cross_check) {
    const double perimeter = region.perimeter();
    const double h = std::min(margin / 4.0, perimeter / 4096.0);
    if (perimeter / h > kMaxQuadraturePoints) {
      std::ostringstream msg;
      msg << "margin " << margin << " needs more than " << kMaxQuadraturePoints << " quadrature points";
      throw BoundaryTooClose(msg.str());
    }
    m.flux_value = flux(p, region, h, kDefaultNMax);
    m.cross_check_delta = std::abs(m.flux_value - m.value);
  }
  return m;
}

MeasureEstimate harmonic_measure(const SkewProduct& sp, Region& region, const MeasureOptions& opt) {
  return harmonic_measure(sp.base(), region, opt);
}

MeasureEstimate harmonic_measure_of(const Poly1& p, const std::function<bool(Complex)>& in_set,
                                    const MeasureOptions& opt) {
  return count_fraction(p, in_set, opt);
}

LinkingResult linking_case2(const SkewProduct& sp, Region region, const MeasureOptions& opt,
                            bool fibers_connected) {
  if (!fibers_connected) {
    throw HypothesisUnmet("the linking formula needs J_z connected for every z in J_p");
  }
  LinkingResult out;
  out.measure = harmonic_measure(sp, region, opt);
  out.region = std::move(region);
  out.degree_factor = sp.degree() - 1;
  out.raw_pairing = out.degree_factor * out.measure.value;
  out.lk = out.raw_pairing - std::floor(out.raw_pairing);
  const double sigma = out.degree_factor * out.measure.std_error;
  out.certified_nonzero = out.lk > 0.0 && std::min(out.lk, 1.0 - out.lk) >= 3.0 * sigma;
  return out;
}

namespace {

// Single-linkage clustering into k groups (Prim MST, cut the k-1 longest
// edges). Returns labels ordered by centroid (real part, then imaginary) and
// the smallest distance between different groups.
std::vector<int> cluster(const std::vector<Complex>& pts, int k, double* separation) {
  const std::size_t n = pts.size();
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(n, 0);
  std::vector<bool> in_tree(n, false);
  struct Edge {
    double len;
    std::size_t a, b;
  };
  std::vector<Edge> edges;
  edges.reserve(n);
  best[0] = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_tree[i] && (u == n || best[i] < best[u])) u = i;
    }
    in_tree[u] = true;
    if (it > 0) edges.push_back({best[u], parent[u], u});
    for (std::size_t i = 0; i < n; ++i) {
      if (in_tree[i]) continue;
      const double d = std::abs(pts[i] - pts[u]);
      if (d < best[i]) {
        best[i] = d;
        parent[i] = u;
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.len > y.len; });
  const std::size_t cut = std::min<std::size_t>(static_cast<std::size_t>(k - 1), edges.size());
  *separation = cut == 0 ? 0.0 : edges[cut - 1].len;

  // union-find over the kept edges
  std::vector<std::size_t> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = i;
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (std::size_t e = cut; e < edges.size(); ++e) root[find(edges[e].a)] = find(edges[e].b);

  std::vector<std::size_t> reps;
  std::vector<Complex> sums;
  std::vector<double> counts;
  std::vector<int> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    auto it = std::find(reps.begin(), reps.end(), r);
    if (it == reps.end()) {
      reps.push_back(r);
      sums.push_back(0.0);
      counts.push_back(0.0);
      it = reps.end() - 1;
    }
    const auto g = static_cast<std::size_t>(it - reps.begin());
    raw[i] = static_cast<int>(g);
    sums[g] += pts[i];
    counts[g] += 1.0;
  }
  std::vector<int> order(reps.size());
  for (std::size_t g = 0; g < order.size(); ++g) order[g] = static_cast<int>(g);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Complex ca = sums[static_cast<std::size_t>(a)] / counts[static_cast<std::size_t>(a)];
    const Complex cb = sums[static_cast<std::size_t>(b)] / counts[static_cast<std::size_t>(b)];
    return ca.real() != cb.real() ? ca.real() < cb.real() : ca.imag() < cb.imag();
  });
  std::vector<int> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
  for (auto& l : raw) l = rank[static_cast<std::size_t>(l)];
  return raw;
}

}  // namespace

WitnessCycles witness_cycles(const SkewProduct& sp, int max_depth, const MeasureOptions& opt,
                             bool fibers_connected) {
  if (max_depth < 1) throw InvalidArgument("max_depth must be >= 1");
  if (!fibers_connected) {
    throw HypothesisUnmet("witness cycles need J_z connected for every z in J_p");
  }
  const Poly1& p = sp.base();
  const int d = sp.degree();
  const PotentialEvaluator pot(sp);
  bool escapes = false;
  for (const auto& c : roots(p.derivative())) escapes = escapes || pot.in_base(c) == Membership::Outside;
  if (!escapes) throw PieceNotSeparable("J_p is connected: there is a single piece");

  const int cloud_size = static_cast<int>(
      std::max(4096.0, 16.0 * std::pow(static_cast<double>(d), max_depth)));
  const auto cloud = sample_julia(p, cloud_size, opt.depth, opt.seed, opt.threads);
  double level1_sep = 0.0;
  const auto labels = cluster(cloud, d, &level1_sep);
  if (level1_sep < kMinSeparation) {
    throw PieceNotSeparable("level-1 pieces closer than 1e-4");
  }

  std::vector<Coords> coords(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) coords[i] = to_coords(cloud[i]);
  const GridIndex index(coords, 2);

  WitnessCycles out;
  // leftmost branch at every level
  out.word.assign(static_cast<std::size_t>(max_depth), 0);

  // itinerary prefix agreement with the word, per cloud point
  std::vector<int> agree(cloud.size(), 0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    Complex x = cloud[i];
    int a = 0;
    while (a < max_depth) {
      std::size_t nearest = 0;
      index.nearest(to_coords(x), &nearest);
      if (labels[nearest] != out.word[static_cast<std::size_t>(a)]) break;
      ++a;
      x = p(x);
    }
    agree[i] = a;
  }

  for (int k = 1; k <= max_depth; ++k) {
    std::vector<Complex> piece;
    std::vector<Coords> rest;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      if (agree[i] >= k) {
        piece.push_back(cloud[i]);
      } else {
        rest.push_back(coords[i]);
      }
    }
    std::string failure;
    double sep = 0.0;
    if (piece.empty()) {
      failure = "no cloud points in the depth-" + std::to_string(k) + " piece";
    } else {
      sep = std::numeric_limits<double>::infinity();
      if (!rest.empty()) {
        const GridIndex rest_index(rest, 2);
        for (const auto& z : piece) sep = std::min(sep, rest_index.nearest(to_coords(z)));
      }
      if (sep < kMinSeparation) failure = "depth-" + std::to_string(k) + " piece closer than 1e-4 to the rest";
    }
    if (!failure.empty()) {
      if (k == 1) throw PieceNotSeparable(failure);
      out.stopped = failure;
      break;
    }
    // greedy cover of the piece by disks of radius sep/2 centered on piece points
    const double rho = std::isfinite(sep) ? 0.5 * sep : 1.0;
    std::vector<Complex> centers;
    for (const auto& z : piece) {
      const bool covered = std::any_of(centers.begin(), centers.end(),
                                       [&](Complex c) { return std::abs(c - z) <= 0.5 * rho; });
      if (!covered) centers.push_back(z);
    }
    std::vector<double> radii(centers.size(), rho);
    try {
      out.entries.push_back(linking_case2(sp, Region::disks(std::move(centers), std::move(radii)), opt, true));
    } catch (const BoundaryTooClose& e) {
      if (k == 1) throw PieceNotSeparable(e.what());
      out.stopped = e.what();
      break;
    }
  }
  return out;
}

HomologyCertificate homology_certificate(const std::vector<LinkingResult>& results, double tol) {
  HomologyCertificate cert;
  cert.tol = tol;
  for (const auto& r : results) {
    if (!r.certified_nonzero) break;
    if (!cert.entries.empty() && !(r.lk < cert.entries.back().lk)) break;
    cert.entries.push_back(r);
  }
  if (cert.entries.size() < 3) {
    throw InsufficientDepth(std::to_string(cert.entries.size()) + " certified decreasing entries, need 3");
  }
  if (!(cert.entries.back().lk < tol)) {
    std::ostringstream msg;
    msg << "last certified linking value " << cert.entries.back().lk << " is not below " << tol;
    throw InsufficientDepth(msg.str());
  }
  cert.depth = static_cast<int>(cert.entries.size());
  std::ostringstream s;
  s << "hypotheses of the infinite-homology criterion verified to depth " << cert.depth
    << " with confidence intervals: nonzero linking values in Q/Z, strictly decreasing, last below " << tol
    << ". Numerical statement only.";
  cert.statement = s.str();
  return cert;
}

std::string to_json(const HomologyCertificate& cert, const WitnessCycles& cycles) {
  using nlohmann::json;
  auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  json entries = json::array();
  for (std::size_t i = 0; i < cycles.entries.size(); ++i) {
    const auto& e = cycles.entries[i];
    const double sigma = e.degree_factor * e.measure.std_error;
    json centers = json::array();
    for (std::size_t c = 0; c < e.region.centers().size(); ++c) {
      centers.push_back({e.region.centers()[c].real() + 0.0, e.region.centers()[c].imag() + 0.0, e.region.radii()[c]});
    }
    entries.push_back({{"depth", i + 1},
                       {"lk", e.lk},
                       {"raw_pairing", e.raw_pairing},
                       {"degree_factor", e.degree_factor},
                       {"measure", e.measure.value},
                       {"stderr", e.measure.std_error},
                       {"interval", {e.lk - 3.0 * sigma, e.lk + 3.0 * sigma}},
                       {"method", to_string(e.measure.method)},
                       {"n_samples", e.measure.n_samples},
                       {"flux", num(e.measure.flux_value)},
                       {"cross_check_delta", num(e.measure.cross_check_delta)},
                       {"certified_nonzero", e.certified_nonzero},
                       {"region", {{"shape", "disk-union"}, {"disks", centers}, {"margin", e.region.margin}}}});
  }
  json doc = {{"certificate", {{"depth", cert.depth}, {"tol", cert.tol}, {"statement", cert.statement}}},
              {"word", cycles.word},
              {"entries", entries},
              {"stopped", cycles.stopped.empty() ? json(nullptr) : json(cycles.stopped)},
              {"perturbation", "not needed: the pairing is computed on the base region directly"}};
  return doc.dump(2) + "\n";
}

}  // namespace skewfatou
