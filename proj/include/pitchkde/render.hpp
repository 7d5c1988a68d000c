#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pitchkde/kde.hpp"

namespace pitchkde {

enum class ColorMapKind { kSequential, kDiverging };

struct ColorAnchor {
  double t = 0.0;  // value fraction in [0, 1]
  std::array<std::uint8_t, 3> rgb{0, 0, 0};
};

struct ColorMap {
  ColorMapKind kind = ColorMapKind::kSequential;
  std::vector<ColorAnchor> anchors;

  void validate() const;
  // white -> blue
  static ColorMap default_sequential();
  // red -> white -> green; the white midpoint anchors the zero of a
  // symmetric diverging scale.
  static ColorMap default_diverging();
};

// max: scale by the grid maximum; fixed: scale by a caller-supplied value.
struct RenderScale {
  static RenderScale max() { return {false, 0.0}; }
  static RenderScale fixed(double v) { return {true, v}; }

  bool is_fixed = false;
  double value = 0.0;
};

// Binary PPM (P6), one pixel per cell, image row 0 at maximum y (attacking
// direction up). Output bytes are a pure function of grid + map + scale.
std::string render_heatmap(const DensityGrid& grid, const ColorMap& map,
                           RenderScale scale = RenderScale::max());

// Signed grids under a diverging map. With symmetric_scale the color span
// is [-M, +M], M = max |value|, so zero lands on the neutral midpoint;
// otherwise the span is [min, max].
std::string render_diff(const DensityGrid& diff, const ColorMap& map,
                        bool symmetric_scale = true);

void write_bytes(const std::string& path, const std::string& bytes);

}  // namespace pitchkde
