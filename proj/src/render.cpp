#include "pitchkde/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "pitchkde/errors.hpp"

namespace pitchkde {

void ColorMap::validate() const {
  if (anchors.empty()) throw InvalidArgumentError("ColorMap: no anchors");
  double prev = -1.0;
  for (const ColorAnchor& a : anchors) {
    if (!(a.t >= 0.0) || !(a.t <= 1.0) || a.t <= prev)
      throw InvalidArgumentError(
          "ColorMap: anchors must be sorted within [0, 1]");
    prev = a.t;
  }
  if (kind == ColorMapKind::kDiverging) {
    const bool has_mid =
        std::any_of(anchors.begin(), anchors.end(),
                    [](const ColorAnchor& a) { return a.t == 0.5; });
    if (!has_mid)
      throw InvalidArgumentError(
          "ColorMap: diverging maps need a neutral anchor at t = 0.5");
  }
}

ColorMap ColorMap::default_sequential() {
  return {ColorMapKind::kSequential,
          {{0.0, {255, 255, 255}}, {1.0, {13, 71, 161}}}};
}

ColorMap ColorMap::default_diverging() {
  return {ColorMapKind::kDiverging,
          {{0.0, {178, 24, 43}}, {0.5, {255, 255, 255}}, {1.0, {27, 120, 55}}}};
}

namespace {

std::array<std::uint8_t, 3> color_at(const ColorMap& map, double t) {
  t = std::clamp(t, 0.0, 1.0);
  const auto& a = map.anchors;
  if (t <= a.front().t) return a.front().rgb;
  if (t >= a.back().t) return a.back().rgb;
  std::size_t hi = 1;
  while (a[hi].t < t) ++hi;
  const ColorAnchor& lo = a[hi - 1];
  const double span = a[hi].t - lo.t;
  const double frac = span > 0.0 ? (t - lo.t) / span : 0.0;
  std::array<std::uint8_t, 3> rgb;
  for (int c = 0; c < 3; ++c) {
    const double v = lo.rgb[c] + frac * (a[hi].rgb[c] - lo.rgb[c]);
    rgb[c] = static_cast<std::uint8_t>(std::lround(v));
  }
  return rgb;
}

std::string render_grid(const DensityGrid& grid, const ColorMap& map,
                        double lo, double hi) {
  const int rows = grid.rows();
  const int cols = grid.cols();
  std::string out = "P6\n" + std::to_string(cols) + " " +
                    std::to_string(rows) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(rows) * cols * 3);
  const double span = hi - lo;
  for (int r = rows - 1; r >= 0; --r) {  // image row 0 = maximum y
    for (int c = 0; c < cols; ++c) {
      const double t = span > 0.0 ? (grid.at(r, c) - lo) / span : 0.5;
      const auto rgb = color_at(map, t);
      out.push_back(static_cast<char>(rgb[0]));
      out.push_back(static_cast<char>(rgb[1]));
      out.push_back(static_cast<char>(rgb[2]));
    }
  }
  return out;
}

}  // namespace

std::string render_heatmap(const DensityGrid& grid, const ColorMap& map,
                           RenderScale scale) {
  map.validate();
  if (map.kind == ColorMapKind::kSequential) {
    for (double v : grid.values())
      if (v < 0.0)
        throw InvalidArgumentError(
            "render_heatmap: negative values under a sequential map");
  }
  double hi;
  if (scale.is_fixed) {
    if (!(scale.value > 0.0))
      throw InvalidArgumentError("render_heatmap: fixed scale must be > 0");
    hi = scale.value;
  } else {
    hi = grid.max_value();
  }
  if (hi <= 0.0) {
    // All-zero grid: every pixel takes the 0-anchor color.
    return render_grid(grid, map, 0.0, 1.0);
  }
  return render_grid(grid, map, 0.0, hi);
}

std::string render_diff(const DensityGrid& diff, const ColorMap& map,
                        bool symmetric_scale) {
  map.validate();
  if (map.kind != ColorMapKind::kDiverging)
    throw InvalidArgumentError("render_diff: requires a diverging map");
  if (symmetric_scale) {
    const double m = diff.max_abs_value();
    if (m <= 0.0) return render_grid(diff, map, -1.0, 1.0);
    return render_grid(diff, map, -m, m);
  }
  const double lo = *std::min_element(diff.values().begin(), diff.values().end());
  const double hi = *std::max_element(diff.values().begin(), diff.values().end());
  if (hi <= lo) return render_grid(diff, map, lo - 1.0, lo + 1.0);
  return render_grid(diff, map, lo, hi);
}

void write_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write: " + path);
}

}  // namespace pitchkde
