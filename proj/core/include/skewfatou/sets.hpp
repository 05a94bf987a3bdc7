#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "skewfatou/poly.hpp"
#include "skewfatou/potential.hpp"

namespace skewfatou {

enum class Ambient { BasePlane, FiberPlane, ProductSpace, InfinityLine };

const char* to_string(Ambient a);

struct CloudMeta {
  std::string set_name;  // J_p, J_z, J_2, J_Pi, J_Ap, D_p, D_Jp, D_Ap, D_Pi
  std::string sampler;
  int depth = 0;
  std::uint64_t seed = 0;
  /// Orbits that left their escape radius; their pre-escape tails are included.
  int escaping_orbits = 0;
};

/// Finite sample of a Julia-type set. Points live in C (one coordinate) or
/// C^2 (two coordinates). Samplers always return at least one point;
/// postcritical clouds may be empty when every orbit escapes.
class PointCloud {
 public:
  PointCloud(Ambient ambient, CloudMeta meta, std::vector<Complex> first,
             std::vector<Complex> second = {}, Complex fiber_z = 0.0);

  Ambient ambient() const { return ambient_; }
  const CloudMeta& meta() const { return meta_; }
  Complex fiber_z() const { return fiber_z_; }
  bool is_product() const { return ambient_ == Ambient::ProductSpace; }
  std::size_t size() const { return first_.size(); }
  bool empty() const { return first_.empty(); }

  /// Single coordinate (or the z coordinate in product space).
  const std::vector<Complex>& points() const { return first_; }
  const std::vector<Complex>& z() const { return first_; }
  const std::vector<Complex>& w() const { return second_; }

  /// CSV with a `# set=... sampler=... depth=... seed=...` header line.
  std::string to_csv() const;

 private:
  Ambient ambient_;
  CloudMeta meta_;
  std::vector<Complex> first_;
  std::vector<Complex> second_;
  Complex fiber_z_;
};

/// Forward orbit z_0, z_1 = p(z_0), ... either as a finite segment or as a
/// prefix followed by a repeating cycle (exact for periodic and preperiodic
/// starting points).
struct BaseOrbit {
  std::vector<Complex> prefix;
  std::vector<Complex> cycle;

  std::size_t length() const {
    return cycle.empty() ? prefix.size() : std::numeric_limits<std::size_t>::max();
  }
  Complex at(std::size_t n) const {
    if (n < prefix.size()) return prefix[n];
    return cycle[(n - prefix.size()) % cycle.size()];
  }
  Complex start() const { return at(0); }
};

struct Cycle {
  std::vector<Complex> points;
  int period = 0;
  Complex multiplier;
};

struct CycleSearch {
  std::vector<Cycle> cycles;
  /// Critical orbits that stayed bounded without closing up within budget.
  int unresolved = 0;
};

inline constexpr int kDefaultSampleDepth = 24;
inline constexpr double kCycleClosureTol = 1e-10;
inline constexpr int kMaxCyclePeriod = 64;

/// Points of J(map) by inverse iteration: each point is `depth` pullbacks of
/// the real seed r + 1 (r the escape radius). The last m = floor(log_d n)
/// branches are stratified (point i uses the base-d digits of i, so every
/// word of length m appears equally often); earlier branches are random per
/// point. Deterministic in (seed, n_points, depth).
std::vector<Complex> sample_julia(const Poly1& map, int n_points, int depth, std::uint64_t seed,
                                  unsigned threads = 0);

PointCloud sample_J_base(const SkewProduct& sp, int n_points, int depth, std::uint64_t seed,
                         unsigned threads = 0);
PointCloud sample_J_infinity(const SkewProduct& sp, int n_points, int depth, std::uint64_t seed,
                             unsigned threads = 0);

/// n orbit segments y_0 .. y_length lying on J(map): built backwards by
/// pulling a J sample back `length` more times, so p(y_k) = y_{k+1} holds to
/// rounding at every k. y_0 is distributed like sample_julia's output.
std::vector<BaseOrbit> sample_base_orbits(const Poly1& map, int n, int length, int depth,
                                          std::uint64_t seed, unsigned threads = 0);

/// Forward orbit of an explicit point for up to `length` steps, stopping once
/// it leaves the escape radius. Exact cycles are detected and stored.
BaseOrbit forward_orbit(const Poly1& map, Complex z0, int length);

/// Samples of J_{z0}: w-values pulled back along the base orbit from a seed
/// with positive fiber potential.
PointCloud sample_J_fiber(const SkewProduct& sp, Complex z0, int n_points, int depth,
                          std::uint64_t seed, unsigned threads = 0);
PointCloud sample_J_fiber_along(const SkewProduct& sp, const BaseOrbit& orbit, int n_points, int depth,
                                std::uint64_t seed, unsigned threads = 0);

/// Union of {z_i} x J_{z_i} over base samples z_i in J_p.
PointCloud sample_J2(const SkewProduct& sp, int n_fibers, int per_fiber, std::uint64_t seed,
                     unsigned threads = 0, int depth = kDefaultSampleDepth);

CycleSearch find_attracting_cycles(const Poly1& map, int budget);
std::vector<Cycle> attracting_cycles(const Poly1& map, int budget);

/// Periodic points of period <= max_period found by iterating inverse-branch
/// words and polishing with Newton's method; each is returned as a cycle with
/// its minimal period.
std::vector<Cycle> periodic_cycles(const Poly1& map, int max_period);

/// q_{z_{k-1}} o ... o q_{z_0} for a cycle of p. Throws PeriodTooLarge when
/// d^k > 4096.
Poly1 fiber_return_map(const SkewProduct& sp, const Cycle& cycle);

/// J over the attracting cycles of p: {z} x J_z for z in A_p.
PointCloud sample_J_Ap(const SkewProduct& sp, const std::vector<Cycle>& cycles, int per_fiber,
                       std::uint64_t seed, unsigned threads = 0);

enum class Postcritical { D_p, D_Jp, D_Ap, D_Pi };

const char* to_string(Postcritical which);

struct PostcriticalOptions {
  int n_starts = 256;
  int n_iter = 64;
  int transient = 16;
  std::uint64_t seed = 1;
  int cycle_budget = 20000;
  unsigned threads = 0;
};

/// Forward orbits of the relevant critical set, keeping the points with index
/// in [transient, n_iter]. Escaping orbits stop at their escape radius and are
/// counted in meta().escaping_orbits.
PointCloud postcritical_cloud(const SkewProduct& sp, Postcritical which, const PostcriticalOptions& opt);

struct ClosestPair {
  double distance = std::numeric_limits<double>::infinity();
  std::size_t first = 0;   // index into the first cloud
  std::size_t second = 0;  // index into the second cloud
};

/// Nearest pair between two clouds of the same ambient; distance +inf if
/// either is empty.
ClosestPair closest_pair(const PointCloud& a, const PointCloud& b);

/// Minimum Euclidean distance between the clouds (+inf if either is empty),
/// using a uniform grid over the second cloud with cell size
/// diameter / sqrt(total points). Throws AmbientMismatch.
double min_distance(const PointCloud& a, const PointCloud& b);

/// Symmetric Hausdorff distance between two clouds of the same ambient.
double hausdorff_distance(const PointCloud& a, const PointCloud& b);

}  // namespace skewfatou
