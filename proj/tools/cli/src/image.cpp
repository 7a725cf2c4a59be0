#include "transduce_cli/image.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace transduce::cli {

Raster::Raster(std::size_t w, std::size_t h, Rgb fill) : width(w), height(h), pixels(w * h, fill) {}

void Raster::set(long x, long y, Rgb c) {
  if (x < 0 || y < 0 || x >= static_cast<long>(width) || y >= static_cast<long>(height)) return;
  pixels[static_cast<std::size_t>(y) * width + static_cast<std::size_t>(x)] = c;
}

Rgb colormap(double t) {
  // piecewise-linear through five anchors of a viridis-like ramp
  static constexpr std::array<std::array<double, 3>, 5> anchors{{
      {68, 1, 84},
      {59, 82, 139},
      {33, 145, 140},
      {94, 201, 98},
      {253, 231, 37},
  }};
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0) * 4.0;
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), 3);
  const double f = t - static_cast<double>(i);
  Rgb out{};
  for (int k = 0; k < 3; ++k)
    out[k] = static_cast<std::uint8_t>(std::lround(anchors[i][k] + f * (anchors[i + 1][k] - anchors[i][k])));
  return out;
}

Raster render_heatmap(const std::vector<double>& values, std::size_t rows, std::size_t cols, double vmin, double vmax,
                      std::size_t scale) {
  if (values.size() != rows * cols) throw std::invalid_argument("heatmap size mismatch");
  scale = std::max<std::size_t>(scale, 1);
  Raster r(cols * scale, rows * scale);
  const double span = vmax > vmin ? vmax - vmin : 1.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = values[i * cols + j];
      const Rgb c = std::isnan(v) ? Rgb{128, 128, 128} : colormap((v - vmin) / span);
      const std::size_t y0 = (rows - 1 - i) * scale;
      for (std::size_t dy = 0; dy < scale; ++dy)
        for (std::size_t dx = 0; dx < scale; ++dx) r.pixels[(y0 + dy) * r.width + j * scale + dx] = c;
    }
  }
  return r;
}

namespace {

std::pair<double, double> to_pixel(const Raster& r, double x, double y) {
  return {x * static_cast<double>(r.width - 1), (1.0 - y) * static_cast<double>(r.height - 1)};
}

}  // namespace

void draw_polyline(Raster& r, const std::vector<std::pair<double, double>>& points, Rgb color) {
  for (std::size_t k = 1; k < points.size(); ++k) {
    const auto [x0, y0] = to_pixel(r, points[k - 1].first, points[k - 1].second);
    const auto [x1, y1] = to_pixel(r, points[k].first, points[k].second);
    const int steps = std::max(1, static_cast<int>(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0)))));
    if (steps > 100000) continue;
    for (int s = 0; s <= steps; ++s) {
      const double f = static_cast<double>(s) / steps;
      r.set(std::lround(x0 + f * (x1 - x0)), std::lround(y0 + f * (y1 - y0)), color);
    }
  }
}

void draw_marker(Raster& r, double x, double y, Rgb color, int radius) {
  const auto [px, py] = to_pixel(r, x, y);
  for (int d = -radius; d <= radius; ++d) {
    r.set(std::lround(px) + d, std::lround(py) + d, color);
    r.set(std::lround(px) + d, std::lround(py) - d, color);
  }
}

namespace {

class PpmEmitter final : public ImageEmitter {
 public:
  std::string extension() const override { return ".ppm"; }
  void write(const Raster& raster, const std::string& base) const override {
    const std::string path = base + extension();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write image '" + path + "'");
    out << "P6\n" << raster.width << ' ' << raster.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(raster.pixels.data()),
              static_cast<std::streamsize>(raster.pixels.size() * sizeof(Rgb)));
  }
};

}  // namespace

std::unique_ptr<ImageEmitter> make_ppm_emitter() { return std::make_unique<PpmEmitter>(); }

}  // namespace transduce::cli
