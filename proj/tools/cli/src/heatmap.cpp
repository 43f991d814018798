#include "majoranon/cli/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "majoranon/errors.hpp"

namespace majoranon::cli {
namespace {

// Anchor colours of the viridis map at t = 0, 0.25, 0.5, 0.75, 1.
constexpr std::array<std::array<double, 3>, 5> kViridis{{
    {68, 1, 84},
    {59, 82, 139},
    {33, 145, 140},
    {94, 201, 98},
    {253, 231, 37},
}};

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

Rgb colormap_color(Colormap map, double t) {
  t = std::clamp(t, 0.0, 1.0);
  if (map == Colormap::gray) {
    const auto g = to_byte(255.0 * t);
    return {g, g, g};
  }
  const double pos = t * static_cast<double>(kViridis.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(pos), kViridis.size() - 2);
  const double f = pos - static_cast<double>(i);
  Rgb out{};
  for (std::size_t c = 0; c < 3; ++c) {
    out[c] = to_byte(kViridis[i][c] + f * (kViridis[i + 1][c] - kViridis[i][c]));
  }
  return out;
}

void render_heatmap(const Eigen::MatrixXd& map, const std::filesystem::path& path, Colormap colormap) {
  if (map.size() == 0) throw InvalidParameter("cannot render an empty heatmap");
  if (!map.allFinite()) throw ContractViolation("heatmap values must be finite");
  const double max = map.maxCoeff();
  if (!(max > 0.0)) throw DegenerateInput("heatmap has no positive value to normalize by");

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P6\n" << map.cols() << ' ' << map.rows() << "\n255\n";
  for (Eigen::Index r = 0; r < map.rows(); ++r) {
    for (Eigen::Index c = 0; c < map.cols(); ++c) {
      const Rgb px = colormap_color(colormap, map(r, c) / max);
      out.write(reinterpret_cast<const char*>(px.data()), 3);
    }
  }
  out.flush();
  if (!out) throw IoError("error while writing " + path.string());
}

}  // namespace majoranon::cli
