#include "cli/render.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "skewfatou/errors.hpp"
#include "skewfatou/parallel.hpp"
#include "skewfatou/sets.hpp"

namespace skewfatou::cli {

Complex Viewport::pixel(int x, int y) const {
  const double step = width / nx;
  return {center.real() - 0.5 * width + (x + 0.5) * step, center.imag() + 0.5 * height() - (y + 0.5) * step};
}

void Viewport::validate() const {
  if (!(width > 0.0) || !std::isfinite(width)) throw InvalidArgument("viewport width must be positive");
  if (nx < 1 || ny < 1 || nx > 16384 || ny > 16384) throw InvalidArgument("viewport pixels must be in 1..16384");
  if (!is_finite(center)) throw InvalidArgument("viewport center must be finite");
}

void Image::set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const std::size_t i = (static_cast<std::size_t>(y) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(x)) * 3;
  rgb[i] = r;
  rgb[i + 1] = g;
  rgb[i + 2] = b;
}

std::string Image::ppm() const {
  std::string out = "P6\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
  out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
  return out;
}

namespace {

void shade(Image& img, int x, int y, Membership m, double g) {
  if (m == Membership::Inside) return img.set(x, y, 0, 0, 0);
  if (m == Membership::Undecided) return img.set(x, y, 128, 0, 0);
  const auto v = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(g, 0.0, 1.0)));
  img.set(x, y, v, v, v);
}

Image scatter(const std::vector<Complex>& pts, const Viewport& view) {
  Image img(view.nx, view.ny);
  std::fill(img.rgb.begin(), img.rgb.end(), std::uint8_t{255});
  const double step = view.width / view.nx;
  const double left = view.center.real() - 0.5 * view.width;
  const double top = view.center.imag() + 0.5 * view.height();
  for (const Complex& w : pts) {
    const double fx = std::floor((w.real() - left) / step);
    const double fy = std::floor((top - w.imag()) / step);
    if (fx < 0 || fy < 0 || fx >= view.nx || fy >= view.ny) continue;
    img.set(static_cast<int>(fx), static_cast<int>(fy), 0, 0, 0);
  }
  return img;
}

}  // namespace

Image render(const PotentialEvaluator& pot, const RenderOptions& opt) {
  const Viewport& view = opt.view;
  view.validate();
  if (opt.what == RenderWhat::J2Slice) {
    if (opt.samples < 1) throw InvalidArgument("j2-slice needs --samples >= 1");
    const PointCloud cloud = sample_J_fiber(pot.map(), opt.fiber_z, opt.samples, 24, opt.seed);
    return scatter(cloud.points(), view);
  }
  Image img(view.nx, view.ny);
  parallel_for(static_cast<std::size_t>(view.ny), opt.threads, [&](std::size_t row) {
    const int y = static_cast<int>(row);
    for (int x = 0; x < view.nx; ++x) {
      const Complex c = view.pixel(x, y);
      switch (opt.what) {
        case RenderWhat::Base:
          shade(img, x, y, pot.in_base(c), pot.green_base(c).value);
          break;
        case RenderWhat::Fiber:
          shade(img, x, y, pot.in_fiber(opt.fiber_z, c), pot.green_relative(opt.fiber_z, c).value);
          break;
        case RenderWhat::Infinity:
          shade(img, x, y, pot.in_infinity(c), pot.green_infinity(c).value);
          break;
        case RenderWhat::J2Slice:
          break;
      }
    }
  });
  return img;
}

void write_atomic(const std::string& path, const std::string& data) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.close();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw Error("cannot rename onto '" + path + "': " + ec.message());
  }
}

}  // namespace skewfatou::cli
