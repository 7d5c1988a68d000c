#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "pitchkde/bandwidth.hpp"
#include "pitchkde/ingest.hpp"
#include "pitchkde/kde.hpp"
#include "pitchkde/transport.hpp"

namespace pitchkde {

enum class SolverChoice { kExact, kSinkhorn };

struct AnalysisConfig {
  std::string input_csv;
  ColumnMapping columns;
  FilterPolicy filter = FilterPolicy::defaults();
  CvConfig cv;
  CandidateGrid candidates = CandidateGrid::default_grid();
  GridSpec grid = default_transport_grid();
  CostSpec cost;
  SolverChoice solver = SolverChoice::kExact;
  double sinkhorn_epsilon = 0.5;
  int sinkhorn_max_iters = 5000;
  double sinkhorn_tol = 1e-9;
  double mass_floor = 1e-10;
  std::size_t min_subset_size = 25;
  std::string output_dir;
};

struct StatPair {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation (n-1); 0 when n < 2
};

// The between/within distance table. Rows are attacking teams; the 'all'
// column compares a team's overall density against the whole league, the
// within matrix compares team-vs-opponent densities against that team's
// overall density. Row/column statistics never include the 'all' column.
struct DistanceReport {
  double pooled_bandwidth = 0.0;
  std::map<std::string, double> all_column;
  std::map<std::string, std::map<std::string, double>> within_matrix;
  std::map<std::string, StatPair> row_stats;
  std::map<std::string, StatPair> col_stats;
  StatPair all_stats;

  GridSpec grid;
  CostSpec cost;
  std::string solver = "exact";

  std::size_t distance_count() const;
};

// Fills row_stats (per attacking team over its opponents), col_stats (per
// opponent over the teams attacking it) and all_stats (over the 'all'
// column itself).
void summarize(DistanceReport& report);

// Elementwise a - b; requires identical grid specs. Integrates to ~0 when
// both inputs are normalized densities.
DensityGrid difference_grid(const DensityGrid& a, const DensityGrid& b);

struct RunArtifacts {
  DistanceReport report;
  std::map<std::string, DensityGrid> grids;  // by partition label
  std::vector<std::string> warnings;
  std::string report_json;
  std::string manifest_json;
};

// The full shared-bandwidth workflow: cross-validate a bandwidth on every
// team-vs-opponent subset, pool by geometric mean, refit every density at
// the pooled bandwidth, compute all between/within distances and summary
// statistics, and (when output_dir is set) persist report, manifest and
// per-subset grids.
RunArtifacts run_analysis(const AnalysisConfig& cfg);

std::string report_to_json(const DistanceReport& report);

}  // namespace pitchkde
