#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "skewfatou/poly.hpp"

namespace skewfatou {

/// Positively oriented region in the base plane: a simple polygon
/// (counterclockwise vertices) or a union of disks.
class Region {
 public:
  enum class Shape { Polygon, DiskUnion };

  static Region polygon(std::vector<Complex> vertices);
  static Region disks(std::vector<Complex> centers, std::vector<double> radii);

  Shape shape() const { return shape_; }
  const std::vector<Complex>& vertices() const { return vertices_; }
  const std::vector<Complex>& centers() const { return centers_; }
  const std::vector<double>& radii() const { return radii_; }

  bool contains(Complex z) const;
  /// Euclidean distance from z to the boundary curve.
  double boundary_distance(Complex z) const;
  double perimeter() const;

  /// Boundary distance to the J_p cloud used when the region was measured.
  double margin = 0.0;

 private:
  Shape shape_ = Shape::Polygon;
  std::vector<Complex> vertices_;
  std::vector<Complex> centers_;
  std::vector<double> radii_;
};

enum class MeasureMethod { PreimageCount, BoundaryFlux };
const char* to_string(MeasureMethod m);

struct MeasureEstimate {
  double value = 0.0;
  double std_error = 0.0;
  int n_samples = 0;
  MeasureMethod method = MeasureMethod::PreimageCount;
  /// Flux estimate, NaN when it was not computed.
  double flux_value = 0.0;
  /// |preimage-count - boundary-flux|, NaN when only one method ran.
  double cross_check_delta = 0.0;
};

struct MeasureOptions {
  int n = 4096;
  int depth = 24;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool cross_check = true;
  /// J_p cloud used for the boundary margin.
  int margin_cloud = 4096;
};

inline constexpr int kMaxQuadraturePoints = 1 << 22;

/// Equilibrium measure of `region` for the base polynomial. The value is the
/// fraction of n random-branch depth-pullbacks that land in the region; the
/// boundary flux (1/2pi) * integral of dG_p/dn ds is the cross-check.
/// Throws InvalidArgument (n < 256) or BoundaryTooClose.
MeasureEstimate harmonic_measure(const Poly1& p, Region& region, const MeasureOptions& opt);
MeasureEstimate harmonic_measure(const SkewProduct& sp, Region& region, const MeasureOptions& opt);

/// Preimage-count estimate for an arbitrary set given by a predicate.
MeasureEstimate harmonic_measure_of(const Poly1& p, const std::function<bool(Complex)>& in_set,
                                    const MeasureOptions& opt);

struct LinkingResult {
  double lk = 0.0;
  double raw_pairing = 0.0;
  int degree_factor = 1;
  Region region;
  MeasureEstimate measure;
  bool certified_nonzero = false;
};

/// (d-1) <Region, mu_p> mod 1. Valid only when every fiber over J_p is
/// connected; throws HypothesisUnmet otherwise.
LinkingResult linking_case2(const SkewProduct& sp, Region region, const MeasureOptions& opt,
                            bool fibers_connected);

struct WitnessCycles {
  std::vector<LinkingResult> entries;
  /// Branch word (level-1 piece labels) the nested pieces follow.
  std::vector<int> word;
  /// Empty unless the sequence stopped before max_depth.
  std::string stopped;
};

/// Nested depth-k pieces of a Cantor J_p along the leftmost branch word, each
/// enclosed in a disk union, with the linking value of each enclosing region.
/// Level-1 pieces are single-linkage clusters of a J_p cloud ordered by
/// centroid. Throws PieceNotSeparable when J_p is connected or the depth-1
/// piece cannot be separated; a later failure returns the prefix that
/// succeeded.
WitnessCycles witness_cycles(const SkewProduct& sp, int max_depth, const MeasureOptions& opt,
                             bool fibers_connected);

struct HomologyCertificate {
  int depth = 0;
  std::vector<LinkingResult> entries;
  double tol = 0.0;
  std::string statement;
};

/// Checks the certified prefix of `results` is strictly decreasing and ends
/// below tol. Throws InsufficientDepth with fewer than three usable entries.
HomologyCertificate homology_certificate(const std::vector<LinkingResult>& results, double tol = 0.02);

std::string to_json(const HomologyCertificate& cert, const WitnessCycles& cycles);

}  // namespace skewfatou
