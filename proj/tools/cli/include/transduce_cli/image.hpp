#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace transduce::cli {

using Rgb = std::array<std::uint8_t, 3>;

/// 8-bit RGB raster, row 0 at the top.
struct Raster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Rgb> pixels;

  Raster(std::size_t w, std::size_t h, Rgb fill = {255, 255, 255});
  void set(long x, long y, Rgb c);
};

/// Perceptually ordered ramp (dark blue to yellow) for t in [0, 1].
Rgb colormap(double t);

/// Renders `values` (row-major, `rows` x `cols`, row 0 = lowest y) as a
/// heatmap, one cell per `scale` x `scale` block. NaN cells are grey.
Raster render_heatmap(const std::vector<double>& values, std::size_t rows, std::size_t cols, double vmin, double vmax,
                      std::size_t scale = 2);

/// Draws a polyline given in unit coordinates (x, y in [0, 1], y up).
void draw_polyline(Raster& r, const std::vector<std::pair<double, double>>& points, Rgb color);
void draw_marker(Raster& r, double x, double y, Rgb color, int radius = 3);

/// The only place image bytes are produced; callers can swap the format
/// without touching the commands.
class ImageEmitter {
 public:
  virtual ~ImageEmitter() = default;
  virtual std::string extension() const = 0;
  virtual void write(const Raster& raster, const std::string& path_without_extension) const = 0;
};

/// Binary PPM (P6).
std::unique_ptr<ImageEmitter> make_ppm_emitter();

}  // namespace transduce::cli
