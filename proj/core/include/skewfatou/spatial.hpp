#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace skewfatou {

using Coords = std::array<double, 4>;

/// Uniform hash grid over points in R^2 or R^4 for nearest-neighbour and
/// fixed-radius queries.
class GridIndex {
 public:
  /// cell <= 0 picks diameter / sqrt(n).
  GridIndex(std::vector<Coords> points, int dims, double cell = 0.0);

  int dims() const { return dims_; }
  std::size_t size() const { return points_.size(); }
  double cell() const { return cell_; }
  const Coords& point(std::size_t i) const { return points_[i]; }

  /// Distance to (and index of) the nearest indexed point; +inf / npos when empty.
  double nearest(const Coords& q, std::size_t* index = nullptr) const;
  /// Calls fn(i) for every indexed point within `radius` of q.
  void within(const Coords& q, double radius, const std::function<void(std::size_t)>& fn) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  using Key = std::array<std::int64_t, 4>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  Key key_of(const Coords& p) const;
  double dist(const Coords& a, const Coords& b) const;
  double brute_nearest(const Coords& q, std::size_t* index) const;

  std::vector<Coords> points_;
  int dims_;
  double cell_;
  Coords origin_{};
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> cells_;
};

/// Diameter of the axis-aligned bounding box of the points.
double bounding_diameter(const std::vector<Coords>& points, int dims);

}  // namespace skewfatou
