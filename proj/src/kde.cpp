#include "pitchkde/kde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pitchkde/detail/parallel.hpp"

namespace pitchkde {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Grid extents snap to whole cells: a span that is an exact multiple of the
// cell size up to rounding noise must not gain a phantom extra cell.
int cell_count(double min, double max, double cell) {
  return static_cast<int>(std::ceil((max - min) / cell - 1e-9));
}

}  // namespace

bool is_on_pitch(Vec2 p) {
  return p.x >= kPitchXMin && p.x <= kPitchXMax && p.y >= kPitchYMin &&
         p.y <= kPitchYMax;
}

SampleSet::SampleSet(std::vector<Vec2> points, std::string label)
    : points_(std::move(points)), label_(std::move(label)) {
  if (points_.empty())
    throw EmptyInputError("SampleSet '" + label_ + "' has no points");
  for (const Vec2& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw InvalidArgumentError("SampleSet '" + label_ +
                                 "' contains a non-finite point");
    if (!is_on_pitch(p))
      throw InvalidArgumentError("SampleSet '" + label_ +
                                 "' contains a point outside the pitch");
  }
}

Bandwidth::Bandwidth(double h) : h_(h) {
  if (!std::isfinite(h) || h <= 0.0)
    throw InvalidArgumentError("bandwidth must be finite and positive");
}

double kernel_value(Vec2 delta, Bandwidth h) {
  if (!std::isfinite(delta.x) || !std::isfinite(delta.y))
    throw InvalidArgumentError("kernel_value: non-finite offset");
  const double hh = h.value();
  const double sq = delta.x * delta.x + delta.y * delta.y;
  return std::exp(-sq / (2.0 * hh)) / (kTwoPi * hh);
}

int GridSpec::rows() const { return cell_count(y_min, y_max, cell_size); }

int GridSpec::cols() const { return cell_count(x_min, x_max, cell_size); }

Vec2 GridSpec::cell_center(int row, int col) const {
  return {x_min + (col + 0.5) * cell_size, y_min + (row + 0.5) * cell_size};
}

void GridSpec::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
      !std::isfinite(y_max) || !std::isfinite(cell_size))
    throw InvalidArgumentError("GridSpec: non-finite field");
  if (x_max <= x_min || y_max <= y_min)
    throw InvalidArgumentError("GridSpec: empty extent");
  if (cell_size <= 0.0)
    throw InvalidArgumentError("GridSpec: cell_size must be positive");
}

GridSpec default_render_grid() { return {-10.0, 80.0, -20.0, 120.0, 1.0}; }

GridSpec default_transport_grid() { return {-10.0, 80.0, -20.0, 120.0, 2.0}; }

DensityGrid::DensityGrid(GridSpec spec, std::vector<double> values)
    : spec_(spec), rows_(spec.rows()), cols_(spec.cols()),
      values_(std::move(values)) {
  spec_.validate();
  if (values_.size() != static_cast<std::size_t>(rows_) * cols_)
    throw InvalidArgumentError("DensityGrid: value count does not match spec");
  for (double v : values_)
    if (!std::isfinite(v))
      throw InvalidArgumentError("DensityGrid: non-finite value");
}

double DensityGrid::integral() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum * spec_.cell_area();
}

double DensityGrid::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

double DensityGrid::max_abs_value() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

DensityModel::DensityModel(SampleSet samples, Bandwidth bandwidth)
    : samples_(std::move(samples)), bandwidth_(bandwidth) {}

namespace {

// Pairwise sum of exp(-sqdist/(2h)) over points[lo, hi).
double kernel_sum(const std::vector<Vec2>& pts, Vec2 q, double inv_2h,
                  std::size_t lo, std::size_t hi) {
  if (hi - lo <= 16) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double dx = q.x - pts[i].x;
      const double dy = q.y - pts[i].y;
      s += std::exp(-(dx * dx + dy * dy) * inv_2h);
    }
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return kernel_sum(pts, q, inv_2h, lo, mid) + kernel_sum(pts, q, inv_2h, mid, hi);
}

}  // namespace

double DensityModel::density_at(Vec2 q) const {
  if (!std::isfinite(q.x) || !std::isfinite(q.y))
    throw InvalidArgumentError("density_at: non-finite query point");
  const auto& pts = samples_.points();
  const double h = bandwidth_.value();
  const double sum = kernel_sum(pts, q, 1.0 / (2.0 * h), 0, pts.size());
  return sum / (static_cast<double>(pts.size()) * kTwoPi * h);
}

double DensityModel::log_density_at(Vec2 q) const {
  if (!std::isfinite(q.x) || !std::isfinite(q.y))
    throw InvalidArgumentError("log_density_at: non-finite query point");
  const auto& pts = samples_.points();
  const double inv_2h = 1.0 / (2.0 * bandwidth_.value());

  double min_sq = std::numeric_limits<double>::infinity();
  for (const Vec2& p : pts) {
    const double dx = q.x - p.x;
    const double dy = q.y - p.y;
    min_sq = std::min(min_sq, dx * dx + dy * dy);
  }
  // log-sum-exp shifted by the dominant term; terms more than 50 nats below
  // it change the sum by < 1e-21 relative and are skipped.
  double acc = 0.0;
  for (const Vec2& p : pts) {
    const double dx = q.x - p.x;
    const double dy = q.y - p.y;
    const double excess = ((dx * dx + dy * dy) - min_sq) * inv_2h;
    if (excess < 50.0) acc += std::exp(-excess);
  }
  return -min_sq * inv_2h + std::log(acc) -
         std::log(static_cast<double>(pts.size()) * kTwoPi * bandwidth_.value());
}

double DensityModel::log_likelihood(const SampleSet& held_out) const {
  double sum = 0.0;
  for (const Vec2& q : held_out.points()) sum += log_density_at(q);
  return sum;
}

DensityGrid DensityModel::evaluate_grid(const GridSpec& spec) const {
  spec.validate();
  const int rows = spec.rows();
  const int cols = spec.cols();
  std::vector<double> values(static_cast<std::size_t>(rows) * cols);
  detail::parallel_for_index(static_cast<std::size_t>(rows), [&](std::size_t r) {
    const int row = static_cast<int>(r);
    for (int col = 0; col < cols; ++col)
      values[r * cols + col] = density_at(spec.cell_center(row, col));
  });
  return DensityGrid(spec, std::move(values));
}

}  // namespace pitchkde
