#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skewfatou/potential.hpp"

namespace skewfatou::cli {

struct Viewport {
  Complex center{0.0, 0.0};
  double width = 4.0;
  int nx = 512;
  int ny = 512;

  double height() const { return width * ny / nx; }
  /// Center of pixel (x, y); row 0 is the top edge.
  Complex pixel(int x, int y) const;
  void validate() const;
};

struct Image {
  int nx = 0;
  int ny = 0;
  std::vector<std::uint8_t> rgb;

  Image(int w, int h) : nx(w), ny(h), rgb(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 0) {}
  void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
  /// Binary PPM (P6, 8-bit RGB).
  std::string ppm() const;
};

enum class RenderWhat { Base, Fiber, Infinity, J2Slice };

struct RenderOptions {
  RenderWhat what = RenderWhat::Base;
  Viewport view;
  Complex fiber_z{0.0, 0.0};
  int samples = 20000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

/// Potential-shaded raster: gray = 255 * min(1, G), points of the filled set
/// black, undecided pixels dark red. J2Slice plots a sample of J_z in black
/// on white.
Image render(const PotentialEvaluator& pot, const RenderOptions& opt);

/// Writes through a temporary file and an atomic rename. Throws Error.
void write_atomic(const std::string& path, const std::string& data);

}  // namespace skewfatou::cli
