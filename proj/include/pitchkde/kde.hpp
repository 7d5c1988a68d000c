#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pitchkde/errors.hpp"

namespace pitchkde {

// Playing-field coordinate bounds, meters. x spans the pitch width, y runs
// along its length; the extra 10 m at each end of y are the try areas.
inline constexpr double kPitchXMin = 0.0;
inline constexpr double kPitchXMax = 70.0;
inline constexpr double kPitchYMin = -10.0;
inline constexpr double kPitchYMax = 110.0;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

bool is_on_pitch(Vec2 p);

// An ordered set of event locations, all on the pitch. Order is preserved:
// upstream filtering is order-sensitive and downstream fits are not.
class SampleSet {
 public:
  SampleSet(std::vector<Vec2> points, std::string label);

  const std::vector<Vec2>& points() const { return points_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Vec2> points_;
  std::string label_;
};

// Smoothing constant h in squared meters: the kernel divides squared
// distances by 2h and normalizes by 2*pi*h, so h acts as a variance.
class Bandwidth {
 public:
  explicit Bandwidth(double h);
  double value() const { return h_; }

 private:
  double h_;
};

// Bivariate normal kernel K_h(delta) = (2*pi*h)^-1 * exp(-|delta|^2 / (2h)).
double kernel_value(Vec2 delta, Bandwidth h);

// Regular lattice covering [x_min,x_max] x [y_min,y_max] with square cells.
// Cell counts round up, so the lattice may overhang the right/top edges.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  double cell_size = 0.0;

  int rows() const;  // along y
  int cols() const;  // along x
  double cell_area() const { return cell_size * cell_size; }
  // Center of cell (row, col); row 0 sits at y_min, col 0 at x_min.
  Vec2 cell_center(int row, int col) const;
  void validate() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Default padded analysis domain around the pitch. Rendering uses 1 m cells,
// exact transport 2 m (support size caps the solver cost).
GridSpec default_render_grid();
GridSpec default_transport_grid();

// Values sampled at cell centers, row-major with row index moving along y.
// Density grids are nonnegative; the same container also carries signed
// difference grids, so nonnegativity is enforced by consumers that need it.
class DensityGrid {
 public:
  DensityGrid(GridSpec spec, std::vector<double> values);

  const GridSpec& spec() const { return spec_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int row, int col) const {
    return values_[static_cast<std::size_t>(row) * cols_ + col];
  }
  const std::vector<double>& values() const { return values_; }

  // Midpoint-rule integral: sum(values) * cell_area.
  double integral() const;
  double max_value() const;
  double max_abs_value() const;

 private:
  GridSpec spec_;
  int rows_;
  int cols_;
  std::vector<double> values_;
};

// Fixed-bandwidth KDE over a sample set: f(q) = (1/n) sum_i K_h(q - x_i).
// Immutable after construction and safe to share across threads.
class DensityModel {
 public:
  DensityModel(SampleSet samples, Bandwidth bandwidth);

  const SampleSet& samples() const { return samples_; }
  Bandwidth bandwidth() const { return bandwidth_; }

  // Kernel terms are combined with pairwise (tree) summation, so the value
  // does not depend on evaluation order; agreement under sample permutation
  // is 1e-12 relative, not bit-exact.
  double density_at(Vec2 q) const;

  // log f(q) evaluated with a max-shifted log-sum-exp; stays finite even
  // where every kernel term underflows.
  double log_density_at(Vec2 q) const;

  // Sum of log densities of the held-out points, nats.
  double log_likelihood(const SampleSet& held_out) const;

  // Density at every cell center. Cells are independent, so evaluation is
  // parallelized and the result does not depend on the partitioning.
  DensityGrid evaluate_grid(const GridSpec& spec) const;

 private:
  SampleSet samples_;
  Bandwidth bandwidth_;
};

inline DensityModel fit(SampleSet samples, Bandwidth bandwidth) {
  return DensityModel(std::move(samples), bandwidth);
}

}  // namespace pitchkde
