#pragma once

#include <array>
#include <cstdint>
#include <filesystem>

#include <Eigen/Core>

#include "majoranon/cli/config.hpp"

namespace majoranon::cli {

using Rgb = std::array<std::uint8_t, 3>;

/// Colour for a normalized intensity t in [0, 1].
Rgb colormap_color(Colormap map, double t);

/// Binary PPM (P6): one pixel per matrix entry, top row = first sample,
/// brightness linear in value / max. Empty matrices throw InvalidParameter,
/// matrices without a positive entry throw DegenerateInput.
void render_heatmap(const Eigen::MatrixXd& map, const std::filesystem::path& path, Colormap colormap);

}  // namespace majoranon::cli
