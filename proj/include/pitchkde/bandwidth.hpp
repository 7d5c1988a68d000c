#pragma once

#include <cstdint>
#include <vector>

#include "pitchkde/kde.hpp"

namespace pitchkde {

// Ascending candidate bandwidths (m^2) for cross-validated selection.
struct CandidateGrid {
  std::vector<double> values;

  void validate() const;
  static CandidateGrid log_spaced(double min, double max, int count);
  // 40 log-spaced values spanning 0.25..100 m^2, i.e. heavily under- to
  // heavily over-smoothed for pitch-scale data.
  static CandidateGrid default_grid();
};

struct CvConfig {
  int folds = 10;
  std::uint64_t seed = 0;
  bool shuffle = true;
};

// Mean held-out log density per point (nats) under k-fold cross-validation.
// The fold split is a seeded shuffle followed by contiguous chunking, with
// remainder points going one-per-fold from the first fold; it depends only
// on (n, cfg), so every candidate bandwidth is scored on identical folds.
double cv_score(const SampleSet& samples, Bandwidth h, const CvConfig& cfg);

// Argmax of cv_score over the candidate grid, ties broken toward the larger
// (smoother) bandwidth. Always returns a grid element.
Bandwidth select_bandwidth(const SampleSet& samples, const CandidateGrid& grid,
                           const CvConfig& cfg);

// exp(mean(log h_i)): the pooling step that yields the shared bandwidth.
Bandwidth pool_geometric_mean(const std::vector<Bandwidth>& hs);

}  // namespace pitchkde
