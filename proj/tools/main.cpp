// pitchkde command line tool: synthesize seasons, ingest event CSVs, select
// bandwidths, compute transport distances, run the full analysis, render
// heatmaps. Every subcommand reads/writes plain CSV, JSON and PPM files.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pitchkde/detail/text.hpp"

#include "pitchkde/bandwidth.hpp"
#include "pitchkde/errors.hpp"
#include "pitchkde/grid_io.hpp"
#include "pitchkde/ingest.hpp"
#include "pitchkde/json_codec.hpp"
#include "pitchkde/pipeline.hpp"
#include "pitchkde/render.hpp"
#include "pitchkde/synthgen.hpp"
#include "pitchkde/transport.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pitchkde::IoError("cannot write: " + path);
  out << text;
}

ordered_json count_summary(std::vector<std::size_t> sizes) {
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
           frac * (static_cast<double>(sizes[hi]) -
                   static_cast<double>(sizes[lo]));
  };
  j["median"] = quantile(0.5);
  j["iqr"] = {quantile(0.25), quantile(0.75)};
  j["min"] = sizes.front();
  j["max"] = sizes.back();
  return j;
}

int cmd_synth(const std::string& config_path, const std::string& out_path) {
  const pitchkde::SeasonConfig cfg = pitchkde::load_season_config(config_path);
  const auto events = pitchkde::generate_season(cfg);
  pitchkde::write_events_csv(out_path, events);
  std::cout << "wrote " << events.size() << " events to " << out_path << "\n";
  return 0;
}

int cmd_ingest(const std::string& input, const std::string& config_path,
               const std::string& out_dir) {
  pitchkde::FilterPolicy policy = pitchkde::FilterPolicy::defaults();
  pitchkde::ColumnMapping columns;
  if (!config_path.empty()) {
    const auto j = pitchkde::load_json_file(config_path);
    if (j.contains("filter"))
      policy = pitchkde::filter_policy_from_json(j.at("filter"));
    if (j.contains("columns"))
      columns = pitchkde::column_mapping_from_json(j.at("columns"));
  }

  const auto parsed = pitchkde::parse_events(input, columns);
  const auto filtered = pitchkde::filter_attacking(parsed.records, policy);
  const auto parts = pitchkde::partition(filtered.events);

  fs::create_directories(fs::path(out_dir) / "subsets");

  ordered_json manifest;
  manifest["input"] = input;
  manifest["parse_issues"] = ordered_json::array();
  for (const auto& issue : parsed.issues)
    manifest["parse_issues"].push_back(
        {{"row", issue.row}, {"reason", issue.reason}});
  manifest["filter"] = {
      {"kept", filtered.summary.kept},
      {"dropped_action", filtered.summary.dropped_action},
      {"dropped_duplicate", filtered.summary.dropped_duplicate}};
  manifest["notices"] = parts.notices;

  std::vector<std::size_t> team_sizes, pair_sizes;
  std::size_t league_size = 0;
  ordered_json files = ordered_json::object();
  for (const auto& [key, samples] : parts.subsets) {
    std::string name;
    switch (key.kind) {
      case pitchkde::PartitionKind::kLeague:
        name = "league";
        league_size = samples.size();
        break;
      case pitchkde::PartitionKind::kTeam:
        name = "team " + key.team;
        team_sizes.push_back(samples.size());
        break;
      case pitchkde::PartitionKind::kTeamVsOpponent:
        name = "tvo " + key.team + " vs " + key.opponent;
        pair_sizes.push_back(samples.size());
        break;
    }
    std::string file;
    for (char c : name)
      file += ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '-' || c == '.')
                  ? c
                  : '_';
    file += ".csv";

    std::string csv = "x,y\n";
    for (const auto& p : samples.points()) {
      csv += pitchkde::detail::format_double(p.x);
      csv += ',';
      csv += pitchkde::detail::format_double(p.y);
      csv += '\n';
    }
    write_text((fs::path(out_dir) / "subsets" / file).string(), csv);
    files[name] = {{"file", "subsets/" + file}, {"count", samples.size()}};
  }
  manifest["subset_counts"] = {{"league", league_size},
                               {"between_team", count_summary(team_sizes)},
                               {"within_team", count_summary(pair_sizes)}};
  manifest["subsets"] = std::move(files);
  write_text((fs::path(out_dir) / "manifest.json").string(),
             manifest.dump(2) + "\n");
  std::cout << "wrote " << parts.subsets.size() << " subsets to " << out_dir
            << "\n";
  return 0;
}

int cmd_select_bandwidth(const std::string& input, const std::string& group_by,
                         int folds, std::uint64_t seed,
                         const std::string& grid_arg,
                         const std::string& out_path) {
  pitchkde::CandidateGrid grid = pitchkde::CandidateGrid::default_grid();
  if (!grid_arg.empty()) {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    if (std::sscanf(grid_arg.c_str(), "%lf,%lf,%d", &lo, &hi, &count) != 3)
      throw pitchkde::ConfigError("--grid expects min,max,count");
    grid = pitchkde::CandidateGrid::log_spaced(lo, hi, count);
  }

  const auto parsed = pitchkde::parse_events(input, {});
  const auto filtered =
      pitchkde::filter_attacking(parsed.records, pitchkde::FilterPolicy::defaults());
  const auto parts = pitchkde::partition(filtered.events);

  pitchkde::PartitionKind wanted;
  if (group_by == "team,opponent")
    wanted = pitchkde::PartitionKind::kTeamVsOpponent;
  else if (group_by == "team")
    wanted = pitchkde::PartitionKind::kTeam;
  else if (group_by == "league")
    wanted = pitchkde::PartitionKind::kLeague;
  else
    throw pitchkde::ConfigError(
        "--group-by must be league, team, or team,opponent");

  pitchkde::CvConfig cv;
  cv.folds = folds;
  cv.seed = seed;

  ordered_json out;
  out["group_by"] = group_by;
  out["folds"] = folds;
  out["seed"] = seed;
  out["candidate_grid"] = grid.values;
  out["subsets"] = ordered_json::object();

  std::vector<pitchkde::Bandwidth> chosen;
  for (const auto& [key, samples] : parts.subsets) {
    if (key.kind != wanted) continue;
    if (samples.size() < static_cast<std::size_t>(folds)) {
      out["subsets"][key.label()] = {{"skipped", "fewer samples than folds"},
                                     {"n", samples.size()}};
      continue;
    }
    ordered_json curve = ordered_json::array();
    for (double h : grid.values)
      curve.push_back({{"h", h},
                       {"score", pitchkde::cv_score(
                                     samples, pitchkde::Bandwidth(h), cv)}});
    const auto best = pitchkde::select_bandwidth(samples, grid, cv);
    chosen.push_back(best);
    out["subsets"][key.label()] = {
        {"n", samples.size()}, {"h", best.value()}, {"scores", curve}};
  }
  if (chosen.empty())
    throw pitchkde::InsufficientDataError(
        "select-bandwidth: no subset had enough samples");
  out["pooled_geometric_mean"] =
      pitchkde::pool_geometric_mean(chosen).value();

  const std::string text = out.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
  return 0;
}

int cmd_distance(const std::string& a_path, const std::string& b_path,
                 double p, const std::string& norm, const std::string& solver,
                 double epsilon, double mass_floor,
                 const std::string& out_path) {
  const auto grid_a = pitchkde::read_grid_json(a_path);
  const auto grid_b = pitchkde::read_grid_json(b_path);
  if (grid_a.spec().cell_size != grid_b.spec().cell_size)
    throw pitchkde::InvalidArgumentError(
        "distance: grids have different cell sizes");

  pitchkde::CostSpec cost;
  cost.p = p;
  if (norm == "l1")
    cost.norm_order = 1.0;
  else if (norm == "l2")
    cost.norm_order = 2.0;
  else
    throw pitchkde::ConfigError("--norm must be l1 or l2");

  const auto mu = pitchkde::discretize(grid_a, mass_floor);
  const auto nu = pitchkde::discretize(grid_b, mass_floor);

  ordered_json out;
  out["p"] = p;
  out["norm"] = norm;
  out["support_sizes"] = {mu.size(), nu.size()};
  out["cell_size"] = grid_a.spec().cell_size;
  if (solver == "exact") {
    out["solver"] = "exact";
    out["distance"] = pitchkde::wasserstein_exact(mu, nu, cost).distance;
    out["converged"] = true;
  } else if (solver == "sinkhorn") {
    const auto r = pitchkde::wasserstein_sinkhorn(mu, nu, cost, epsilon);
    out["solver"] = "sinkhorn";
    out["epsilon"] = epsilon;
    out["distance"] = r.distance;
    out["converged"] = r.converged;
    out["iterations"] = r.iterations;
  } else {
    throw pitchkde::ConfigError("--solver must be exact or sinkhorn");
  }

  const std::string text = out.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);
  return 0;
}

int cmd_analyze(const std::string& config_path) {
  const pitchkde::AnalysisConfig cfg =
      pitchkde::load_analysis_config(config_path);
  const auto artifacts = pitchkde::run_analysis(cfg);
  if (cfg.output_dir.empty()) {
    std::cout << artifacts.report_json;
  } else {
    std::cout << "pooled bandwidth " << artifacts.report.pooled_bandwidth
              << ", " << artifacts.report.distance_count() << " distances, "
              << "artifacts in " << cfg.output_dir << "\n";
    for (const auto& w : artifacts.warnings)
      std::cerr << "warning: " << w << "\n";
  }
  return 0;
}

int cmd_render(const std::string& grid_path, const std::string& diff_path,
               const std::string& out_path, const std::string& colormap_path) {
  const auto grid = pitchkde::read_grid_json(grid_path);
  std::string bytes;
  if (diff_path.empty()) {
    pitchkde::ColorMap map = colormap_path.empty()
                                 ? pitchkde::ColorMap::default_sequential()
                                 : pitchkde::load_colormap(colormap_path);
    bytes = pitchkde::render_heatmap(grid, map);
  } else {
    const auto other = pitchkde::read_grid_json(diff_path);
    pitchkde::ColorMap map = colormap_path.empty()
                                 ? pitchkde::ColorMap::default_diverging()
                                 : pitchkde::load_colormap(colormap_path);
    bytes = pitchkde::render_diff(pitchkde::difference_grid(grid, other), map);
  }
  pitchkde::write_bytes(out_path, bytes);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial trends in pitch event data: shared-bandwidth KDEs "
               "compared with Wasserstein distances"};
  app.require_subcommand(1);

  // synth
  std::string synth_config, synth_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic season CSV");
  synth->add_option("--config", synth_config, "Season config JSON")->required();
  synth->add_option("--out", synth_out, "Output CSV path")->required();

  // ingest
  std::string ingest_input, ingest_config, ingest_out;
  auto* ingest = app.add_subcommand(
      "ingest", "Parse, filter and partition an event CSV");
  ingest->add_option("--input", ingest_input, "Event CSV")->required();
  ingest->add_option("--config", ingest_config,
                     "JSON with filter/column settings");
  ingest->add_option("--out", ingest_out, "Output directory")->required();

  // select-bandwidth
  std::string sb_input, sb_group = "team,opponent", sb_grid, sb_out;
  int sb_folds = 10;
  std::uint64_t sb_seed = 0;
  auto* sb = app.add_subcommand("select-bandwidth",
                                "Cross-validated bandwidth per subset plus "
                                "the pooled geometric mean");
  sb->add_option("--input", sb_input, "Event CSV")->required();
  sb->add_option("--group-by", sb_group, "league | team | team,opponent");
  sb->add_option("--folds", sb_folds, "Cross-validation folds");
  sb->add_option("--seed", sb_seed, "Shuffle seed");
  sb->add_option("--grid", sb_grid, "Candidate grid as min,max,count");
  sb->add_option("--out", sb_out, "Output JSON path (default stdout)");

  // distance
  std::string d_a, d_b, d_norm = "l1", d_solver = "exact", d_out;
  double d_p = 1.0, d_epsilon = 0.5, d_floor = 1e-10;
  auto* dist = app.add_subcommand(
      "distance", "Wasserstein distance between two density grids");
  dist->add_option("--a", d_a, "First grid JSON")->required();
  dist->add_option("--b", d_b, "Second grid JSON")->required();
  dist->add_option("--p", d_p, "Wasserstein order");
  dist->add_option("--norm", d_norm, "Ground norm: l1 or l2");
  dist->add_option("--solver", d_solver, "exact or sinkhorn");
  dist->add_option("--epsilon", d_epsilon, "Sinkhorn regularization");
  dist->add_option("--mass-floor", d_floor, "Discretization mass floor");
  dist->add_option("--out", d_out, "Output JSON path (default stdout)");

  // analyze
  std::string an_config;
  auto* analyze = app.add_subcommand(
      "analyze", "Full analysis: CV bandwidths, pooled refit, distance table");
  analyze->add_option("--config", an_config, "Analysis config JSON")->required();

  // render
  std::string r_grid, r_diff, r_out, r_map;
  auto* render = app.add_subcommand("render",
                                    "Heatmap (or difference map) as PPM");
  render->add_option("--grid", r_grid, "Grid JSON")->required();
  render->add_option("--diff", r_diff, "Subtract this grid and use the "
                                       "diverging map");
  render->add_option("--out", r_out, "Output PPM path")->required();
  render->add_option("--colormap", r_map, "Colormap JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(synth_config, synth_out);
    if (ingest->parsed()) return cmd_ingest(ingest_input, ingest_config, ingest_out);
    if (sb->parsed())
      return cmd_select_bandwidth(sb_input, sb_group, sb_folds, sb_seed,
                                  sb_grid, sb_out);
    if (dist->parsed())
      return cmd_distance(d_a, d_b, d_p, d_norm, d_solver, d_epsilon, d_floor,
                          d_out);
    if (analyze->parsed()) return cmd_analyze(an_config);
    if (render->parsed()) return cmd_render(r_grid, r_diff, r_out, r_map);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
