#include "skewfatou/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skewfatou {

double bounding_diameter(const std::vector<Coords>& points, int dims) {
  if (points.empty()) return 0.0;
  Coords lo = points[0], hi = points[0];
  for (const auto& p : points) {
    for (int k = 0; k < dims; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  double s = 0.0;
  for (int k = 0; k < dims; ++k) s += (hi[k] - lo[k]) * (hi[k] - lo[k]);
  return std::sqrt(s);
}

std::size_t GridIndex::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto v : k) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

GridIndex::GridIndex(std::vector<Coords> points, int dims, double cell)
    : points_(std::move(points)), dims_(dims), cell_(cell) {
  if (points_.empty()) return;
  if (cell_ <= 0.0) {
    const double diam = bounding_diameter(points_, dims_);
    cell_ = diam / std::sqrt(static_cast<double>(points_.size()));
  }
  if (!(cell_ > 0.0)) cell_ = 1.0;
  origin_ = points_[0];
  for (const auto& p : points_) {
    for (int k = 0; k < dims_; ++k) origin_[k] = std::min(origin_[k], p[k]);
  }
  cells_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) cells_[key_of(points_[i])].push_back(i);
}

GridIndex::Key GridIndex::key_of(const Coords& p) const {
  Key k{};
  for (int d = 0; d < dims_; ++d) k[d] = static_cast<std::int64_t>(std::floor((p[d] - origin_[d]) / cell_));
  return k;
}

double GridIndex::dist(const Coords& a, const Coords& b) const {
  double s = 0.0;
  for (int k = 0; k < dims_; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

double GridIndex::brute_nearest(const Coords& q, std::size_t* index) const {
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = npos;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const double d = dist(q, points_[i]);
    if (d < best) {
      best = d;
      arg = i;
    }
  }
  if (index) *index = arg;
  return best;
}

double GridIndex::nearest(const Coords& q, std::size_t* index) const {
  if (points_.empty()) {
    if (index) *index = npos;
    return std::numeric_limits<double>::infinity();
  }
  const Key center = key_of(q);
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = npos;
  for (std::int64_t r = 0;; ++r) {
    // a full shell costs (2r+1)^dims lookups; past the point count a scan is cheaper
    const double shell = std::pow(2.0 * static_cast<double>(r) + 1.0, dims_);
    if (shell > static_cast<double>(std::max(cells_.size(), points_.size()))) return brute_nearest(q, index);
    Key off{};
    const std::int64_t side = 2 * r + 1;
    std::int64_t total = 1;
    for (int d = 0; d < dims_; ++d) total *= side;
    for (std::int64_t c = 0; c < total; ++c) {
      std::int64_t rem = c;
      bool on_shell = false;
      for (int d = 0; d < dims_; ++d) {
        off[d] = rem % side - r;
        rem /= side;
        if (off[d] == r || off[d] == -r) on_shell = true;
      }
      if (!on_shell && r > 0) continue;
      Key k = center;
      for (int d = 0; d < dims_; ++d) k[d] += off[d];
      const auto it = cells_.find(k);
      if (it == cells_.end()) continue;
      for (auto i : it->second) {
        const double dd = dist(q, points_[i]);
        if (dd < best || (dd == best && i < arg)) {
          best = dd;
          arg = i;
        }
      }
    }
    // every point outside the inspected cube is at least r * cell away
    if (best <= static_cast<double>(r) * cell_) break;
  }
  if (index) *index = arg;
  return best;
}

void GridIndex::within(const Coords& q, double radius, const std::function<void(std::size_t)>& fn) const {
  if (points_.empty()) return;
  const auto reach = static_cast<std::int64_t>(std::ceil(radius / cell_));
  const double shell = std::pow(2.0 * static_cast<double>(reach) + 1.0, dims_);
  if (shell > static_cast<double>(points_.size())) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (dist(q, points_[i]) <= radius) fn(i);
    }
    return;
  }
  const Key center = key_of(q);
  const std::int64_t side = 2 * reach + 1;
  std::int64_t total = 1;
  for (int d = 0; d < dims_; ++d) total *= side;
  Key k{};
  for (std::int64_t c = 0; c < total; ++c) {
    std::int64_t rem = c;
    k = center;
    for (int d = 0; d < dims_; ++d) {
      k[d] += rem % side - reach;
      rem /= side;
    }
    const auto it = cells_.find(k);
    if (it == cells_.end()) continue;
    for (auto i : it->second) {
      if (dist(q, points_[i]) <= radius) fn(i);
    }
  }
}

}  // namespace skewfatou
