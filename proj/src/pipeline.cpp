#include "pitchkde/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>

#include <nlohmann/json.hpp>

#include "pitchkde/detail/parallel.hpp"
#include "pitchkde/errors.hpp"
#include "pitchkde/grid_io.hpp"
#include "pitchkde/json_codec.hpp"

namespace pitchkde {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::size_t DistanceReport::distance_count() const {
  std::size_t n = all_column.size();
  for (const auto& [team, row] : within_matrix) n += row.size();
  return n;
}

namespace {

StatPair mean_sd(const std::vector<double>& values) {
  StatPair s;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  if (values.size() < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return s;
}

std::string sanitize_filename(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '.';
    out += ok ? c : '_';
  }
  return out;
}

ordered_json count_stats(std::vector<std::size_t> sizes) {
  ordered_json j;
  j["subsets"] = sizes.size();
  if (sizes.empty()) return j;
  std::sort(sizes.begin(), sizes.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(sizes.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sizes.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return static_cast<double>(sizes[lo]) +
           frac * (static_cast<double>(sizes[hi]) - static_cast<double>(sizes[lo]));
  };
  j["median"] = quantile(0.5);
  j["iqr"] = {quantile(0.25), quantile(0.75)};
  j["min"] = sizes.front();
  j["max"] = sizes.back();
  return j;
}

}  // namespace

void summarize(DistanceReport& report) {
  report.row_stats.clear();
  report.col_stats.clear();

  std::map<std::string, std::vector<double>> columns;
  for (const auto& [team, row] : report.within_matrix) {
    std::vector<double> values;
    values.reserve(row.size());
    for (const auto& [opponent, d] : row) {
      values.push_back(d);
      columns[opponent].push_back(d);
    }
    report.row_stats[team] = mean_sd(values);
  }
  for (const auto& [opponent, values] : columns)
    report.col_stats[opponent] = mean_sd(values);

  std::vector<double> all_values;
  all_values.reserve(report.all_column.size());
  for (const auto& [team, d] : report.all_column) all_values.push_back(d);
  report.all_stats = mean_sd(all_values);
}

DensityGrid difference_grid(const DensityGrid& a, const DensityGrid& b) {
  if (!(a.spec() == b.spec()))
    throw InvalidArgumentError("difference_grid: grid specs differ");
  std::vector<double> values(a.values().size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = a.values()[i] - b.values()[i];
  return DensityGrid(a.spec(), std::move(values));
}

std::string report_to_json(const DistanceReport& report) {
  ordered_json j;
  j["pooled_bandwidth"] = report.pooled_bandwidth;
  j["solver"] = report.solver;
  j["cost"] = {{"p", report.cost.p}, {"norm_order", report.cost.norm_order}};
  j["grid"] = {{"x_min", report.grid.x_min}, {"x_max", report.grid.x_max},
               {"y_min", report.grid.y_min}, {"y_max", report.grid.y_max},
               {"cell_size", report.grid.cell_size}};
  j["all_column"] = ordered_json::object();
  for (const auto& [team, d] : report.all_column) j["all_column"][team] = d;
  j["within_matrix"] = ordered_json::object();
  for (const auto& [team, row] : report.within_matrix) {
    ordered_json row_json = ordered_json::object();
    for (const auto& [opponent, d] : row) row_json[opponent] = d;
    j["within_matrix"][team] = std::move(row_json);
  }
  auto stats_json = [](const StatPair& s) {
    return ordered_json{{"mean", s.mean}, {"sd", s.sd}};
  };
  j["row_stats"] = ordered_json::object();
  for (const auto& [team, s] : report.row_stats)
    j["row_stats"][team] = stats_json(s);
  j["col_stats"] = ordered_json::object();
  for (const auto& [opponent, s] : report.col_stats)
    j["col_stats"][opponent] = stats_json(s);
  j["all_stats"] = stats_json(report.all_stats);
  return j.dump(2) + "\n";
}

RunArtifacts run_analysis(const AnalysisConfig& cfg) {
  cfg.cost.validate();
  cfg.grid.validate();
  cfg.candidates.validate();

  RunArtifacts out;
  DistanceReport& report = out.report;
  report.grid = cfg.grid;
  report.cost = cfg.cost;
  report.solver = cfg.solver == SolverChoice::kExact ? "exact" : "sinkhorn";

  // Ingest.
  const ParseResult parsed = parse_events(cfg.input_csv, cfg.columns);
  const FilterResult filtered = filter_attacking(parsed.records, cfg.filter);
  PartitionResult parts = partition(filtered.events);
  for (const std::string& n : parts.notices) out.warnings.push_back(n);
  if (parts.subsets.empty())
    throw InsufficientDataError("run_analysis: no events after filtering");

  // Subset admission. CV additionally needs at least `folds` points.
  const std::size_t min_size = cfg.min_subset_size;
  const std::size_t min_cv_size =
      std::max<std::size_t>(min_size, static_cast<std::size_t>(cfg.cv.folds));

  std::vector<const SampleSet*> cv_subsets;
  std::vector<std::string> cv_labels;
  std::map<std::string, const SampleSet*> team_sets;
  std::map<std::pair<std::string, std::string>, const SampleSet*> pair_sets;
  const SampleSet* league = nullptr;

  for (const auto& [key, samples] : parts.subsets) {
    switch (key.kind) {
      case PartitionKind::kLeague:
        league = &samples;
        break;
      case PartitionKind::kTeam:
        if (samples.size() < min_size) {
          out.warnings.push_back("excluded team subset '" + key.label() +
                                 "' (size " + std::to_string(samples.size()) +
                                 " < " + std::to_string(min_size) + ")");
        } else {
          team_sets[key.team] = &samples;
        }
        break;
      case PartitionKind::kTeamVsOpponent:
        if (samples.size() < min_cv_size) {
          out.warnings.push_back("excluded subset '" + key.label() +
                                 "' (size " + std::to_string(samples.size()) +
                                 " < " + std::to_string(min_cv_size) + ")");
        } else {
          pair_sets[{key.team, key.opponent}] = &samples;
          cv_subsets.push_back(&samples);
          cv_labels.push_back(key.label());
        }
        break;
    }
  }
  if (!league)
    throw InsufficientDataError("run_analysis: league subset is empty");
  if (cv_subsets.empty())
    throw InsufficientDataError(
        "run_analysis: no team-vs-opponent subset meets the minimum size");

  // Stage 1: per-subset bandwidth selection on the finest partition level.
  std::vector<Bandwidth> selected;
  selected.reserve(cv_subsets.size());
  for (const SampleSet* s : cv_subsets)
    selected.push_back(select_bandwidth(*s, cfg.candidates, cfg.cv));

  // Stage 2: geometric-mean pooling; one bandwidth for every model.
  const Bandwidth pooled = pool_geometric_mean(selected);
  report.pooled_bandwidth = pooled.value();

  // Stage 3: fit and evaluate every density at the pooled bandwidth.
  struct GridJob {
    std::string label;
    const SampleSet* samples;
  };
  std::vector<GridJob> jobs;
  jobs.push_back({"league", league});
  for (const auto& [team, s] : team_sets) jobs.push_back({"team " + team, s});
  for (const auto& [pair, s] : pair_sets)
    jobs.push_back({"tvo " + pair.first + " vs " + pair.second, s});

  std::vector<std::optional<DensityGrid>> grids(jobs.size());
  detail::parallel_for_index(jobs.size(), [&](std::size_t i) {
    grids[i] = DensityModel(*jobs[i].samples, pooled).evaluate_grid(cfg.grid);
  });
  for (std::size_t i = 0; i < jobs.size(); ++i)
    out.grids.emplace(jobs[i].label, *grids[i]);

  // Discretize once per grid.
  std::map<std::string, DiscreteDistribution> dists;
  for (const auto& [label, grid] : out.grids)
    dists.emplace(label, discretize(grid, cfg.mass_floor));

  std::vector<std::string> nonconverged;
  auto distance_between = [&](const DiscreteDistribution& a,
                              const DiscreteDistribution& b,
                              const std::string& what) {
    if (cfg.solver == SolverChoice::kExact)
      return wasserstein_exact(a, b, cfg.cost).distance;
    const SinkhornResult r =
        wasserstein_sinkhorn(a, b, cfg.cost, cfg.sinkhorn_epsilon,
                             cfg.sinkhorn_max_iters, cfg.sinkhorn_tol);
    if (!r.converged) nonconverged.push_back(what);
    return r.distance;
  };

  // Self-distance smoke check on the first team density.
  if (!team_sets.empty()) {
    const auto& label = "team " + team_sets.begin()->first;
    const double self =
        wasserstein_exact(dists.at(label), dists.at(label), cfg.cost).distance;
    if (std::abs(self) > 1e-9)
      throw Error("run_analysis: self-distance smoke check failed");
  }

  // Stage 4: 'all' distances (team overall vs league) and within distances
  // (team-vs-opponent vs the same team's overall density).
  struct DistanceJob {
    const DiscreteDistribution* a;
    const DiscreteDistribution* b;
    std::string team;
    std::string opponent;  // empty = 'all' column entry
    double result = 0.0;
  };
  std::vector<DistanceJob> dist_jobs;
  const DiscreteDistribution& league_dist = dists.at("league");
  for (const auto& [team, s] : team_sets)
    dist_jobs.push_back({&dists.at("team " + team), &league_dist, team, ""});
  for (const auto& [pair, s] : pair_sets) {
    if (!team_sets.contains(pair.first)) continue;
    dist_jobs.push_back({&dists.at("tvo " + pair.first + " vs " + pair.second),
                         &dists.at("team " + pair.first), pair.first,
                         pair.second});
  }

  detail::parallel_for_index(dist_jobs.size(), [&](std::size_t i) {
    DistanceJob& job = dist_jobs[i];
    const std::string what =
        job.opponent.empty() ? "all " + job.team
                             : job.team + " vs " + job.opponent;
    job.result = distance_between(*job.a, *job.b, what);
  });

  for (const DistanceJob& job : dist_jobs) {
    if (job.opponent.empty())
      report.all_column[job.team] = job.result;
    else
      report.within_matrix[job.team][job.opponent] = job.result;
  }

  // Stage 5: summary statistics (excluding the 'all' column by layout).
  summarize(report);

  out.report_json = report_to_json(report);

  // Manifest: how the run was shaped, without any wall-clock content so
  // reruns are byte-identical.
  ordered_json manifest;
  manifest["config_hash"] =
      fnv1a_hex(analysis_config_to_json(cfg).dump());
  manifest["seed"] = cfg.cv.seed;
  manifest["input"] = cfg.input_csv;
  manifest["parse_issues"] = parsed.issues.size();
  manifest["filter"] = {{"kept", filtered.summary.kept},
                        {"dropped_action", filtered.summary.dropped_action},
                        {"dropped_duplicate",
                         filtered.summary.dropped_duplicate}};
  {
    std::vector<std::size_t> team_sizes, pair_sizes;
    for (const auto& [key, samples] : parts.subsets) {
      if (key.kind == PartitionKind::kTeam)
        team_sizes.push_back(samples.size());
      else if (key.kind == PartitionKind::kTeamVsOpponent)
        pair_sizes.push_back(samples.size());
    }
    manifest["subset_counts"] = {{"league", league->size()},
                                 {"between_team", count_stats(team_sizes)},
                                 {"within_team", count_stats(pair_sizes)}};
  }
  manifest["warnings"] = out.warnings;
  {
    ordered_json bw = ordered_json::object();
    for (std::size_t i = 0; i < cv_labels.size(); ++i)
      bw[cv_labels[i]] = selected[i].value();
    manifest["selected_bandwidths"] = std::move(bw);
  }
  manifest["pooled_bandwidth"] = pooled.value();
  manifest["sinkhorn_nonconverged"] = nonconverged;
  out.manifest_json = manifest.dump(2) + "\n";

  // Persist artifacts.
  if (!cfg.output_dir.empty()) {
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir / "grids");
    {
      std::ofstream f(dir / "report.json", std::ios::binary);
      if (!f) throw IoError("cannot write report.json");
      f << out.report_json;
    }
    {
      std::ofstream f(dir / "manifest.json", std::ios::binary);
      if (!f) throw IoError("cannot write manifest.json");
      f << out.manifest_json;
    }
    for (const auto& [label, grid] : out.grids) {
      const std::string name = sanitize_filename(label);
      write_grid_json((dir / "grids" / (name + ".json")).string(), grid);
    }
  }
  return out;
}

}  // namespace pitchkde
