#include "pitchkde/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "pitchkde/detail/parallel.hpp"
#include "pitchkde/detail/rng.hpp"
#include "pitchkde/errors.hpp"

namespace pitchkde {

void CandidateGrid::validate() const {
  if (values.size() < 2)
    throw InvalidArgumentError("CandidateGrid: need at least two candidates");
  double prev = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v <= prev)
      throw InvalidArgumentError(
          "CandidateGrid: values must be positive and strictly increasing");
    prev = v;
  }
}

CandidateGrid CandidateGrid::log_spaced(double min, double max, int count) {
  if (!(min > 0.0) || !(max > min) || count < 2)
    throw InvalidArgumentError("CandidateGrid: bad log_spaced parameters");
  CandidateGrid grid;
  grid.values.resize(count);
  const double lmin = std::log(min);
  const double lmax = std::log(max);
  for (int i = 0; i < count; ++i)
    grid.values[i] = std::exp(lmin + (lmax - lmin) * i / (count - 1));
  grid.values.front() = min;
  grid.values.back() = max;
  return grid;
}

CandidateGrid CandidateGrid::default_grid() {
  return log_spaced(0.25, 100.0, 40);
}

namespace {

struct FoldSplit {
  std::vector<std::size_t> order;  // shuffled sample indices
  std::vector<std::size_t> fold_begin;  // folds as contiguous slices, size folds+1
};

FoldSplit make_folds(std::size_t n, const CvConfig& cfg) {
  if (cfg.folds < 2)
    throw InvalidArgumentError("CvConfig: folds must be at least 2");
  if (n < static_cast<std::size_t>(cfg.folds))
    throw InsufficientDataError("cross-validation: fewer samples than folds");

  FoldSplit split;
  split.order.resize(n);
  std::iota(split.order.begin(), split.order.end(), std::size_t{0});
  if (cfg.shuffle) {
    detail::Rng rng(cfg.seed);
    rng.shuffle(split.order);
  }

  const std::size_t folds = static_cast<std::size_t>(cfg.folds);
  const std::size_t base = n / folds;
  const std::size_t rem = n % folds;
  split.fold_begin.resize(folds + 1);
  split.fold_begin[0] = 0;
  for (std::size_t f = 0; f < folds; ++f)
    split.fold_begin[f + 1] = split.fold_begin[f] + base + (f < rem ? 1 : 0);
  return split;
}

// Held-out log density summed over one fold. Distances are read from the
// cached n*n matrix when available; kernel terms more than 50 nats below
// the leading one are skipped (relative effect < 1e-21).
double fold_log_likelihood(const std::vector<Vec2>& pts, const FoldSplit& split,
                           std::size_t fold, double h,
                           const std::vector<double>* sqdist) {
  const std::size_t n = pts.size();
  const std::size_t begin = split.fold_begin[fold];
  const std::size_t end = split.fold_begin[fold + 1];
  const std::size_t train_count = n - (end - begin);
  const double inv_2h = 1.0 / (2.0 * h);
  const double log_norm =
      std::log(static_cast<double>(train_count) * 2.0 * std::numbers::pi * h);

  double total = 0.0;
  for (std::size_t t = begin; t < end; ++t) {
    const std::size_t qi = split.order[t];
    double min_sq = std::numeric_limits<double>::infinity();
    auto sq_to = [&](std::size_t si) -> double {
      if (sqdist) return (*sqdist)[qi * n + si];
      const double dx = pts[qi].x - pts[si].x;
      const double dy = pts[qi].y - pts[si].y;
      return dx * dx + dy * dy;
    };
    for (std::size_t s = 0; s < n; ++s) {
      if (s >= begin && s < end) continue;
      min_sq = std::min(min_sq, sq_to(split.order[s]));
    }
    const double cut = min_sq + 100.0 * h;  // 50 nats: 2h * 50
    double acc = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      if (s >= begin && s < end) continue;
      const double sq = sq_to(split.order[s]);
      if (sq < cut) acc += std::exp(-(sq - min_sq) * inv_2h);
    }
    total += -min_sq * inv_2h + std::log(acc) - log_norm;
  }
  return total;
}

double cv_score_impl(const std::vector<Vec2>& pts, const FoldSplit& split,
                     double h, const std::vector<double>* sqdist) {
  double total = 0.0;
  const std::size_t folds = split.fold_begin.size() - 1;
  for (std::size_t f = 0; f < folds; ++f)
    total += fold_log_likelihood(pts, split, f, h, sqdist);
  return total / static_cast<double>(pts.size());
}

// Cache pairwise squared distances up to ~128 MB; candidate scans reuse it.
std::vector<double> make_sqdist(const std::vector<Vec2>& pts) {
  const std::size_t n = pts.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double dx = pts[i].x - pts[j].x;
      const double dy = pts[i].y - pts[j].y;
      const double sq = dx * dx + dy * dy;
      d[i * n + j] = sq;
      d[j * n + i] = sq;
    }
  }
  return d;
}

constexpr std::size_t kSqDistCacheLimit = 4000;  // 4000^2 doubles ~ 128 MB

}  // namespace

double cv_score(const SampleSet& samples, Bandwidth h, const CvConfig& cfg) {
  const auto& pts = samples.points();
  const FoldSplit split = make_folds(pts.size(), cfg);
  if (pts.size() <= kSqDistCacheLimit) {
    const std::vector<double> sqdist = make_sqdist(pts);
    return cv_score_impl(pts, split, h.value(), &sqdist);
  }
  return cv_score_impl(pts, split, h.value(), nullptr);
}

Bandwidth select_bandwidth(const SampleSet& samples, const CandidateGrid& grid,
                           const CvConfig& cfg) {
  grid.validate();
  const auto& pts = samples.points();
  const FoldSplit split = make_folds(pts.size(), cfg);

  std::vector<double> sqdist;
  const std::vector<double>* cache = nullptr;
  if (pts.size() <= kSqDistCacheLimit) {
    sqdist = make_sqdist(pts);
    cache = &sqdist;
  }

  std::vector<double> scores(grid.values.size());
  detail::parallel_for_index(grid.values.size(), [&](std::size_t i) {
    scores[i] = cv_score_impl(pts, split, grid.values[i], cache);
  });

  // Ascending grid + non-strict comparison = ties resolve to the larger h.
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] >= scores[best]) best = i;
  return Bandwidth(grid.values[best]);
}

Bandwidth pool_geometric_mean(const std::vector<Bandwidth>& hs) {
  if (hs.empty())
    throw EmptyInputError("pool_geometric_mean: no bandwidths to pool");
  double log_sum = 0.0;
  for (const Bandwidth& h : hs) log_sum += std::log(h.value());
  return Bandwidth(std::exp(log_sum / static_cast<double>(hs.size())));
}

}  // namespace pitchkde
