#include "pitchkde/json_codec.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "pitchkde/errors.hpp"

namespace pitchkde {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json require(const json& j, const char* field) {
  if (!j.contains(field))
    throw ConfigError(std::string("config: missing field '") + field + "'");
  return j.at(field);
}

double norm_order_from_json(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "l1" || s == "L1") return 1.0;
    if (s == "l2" || s == "L2") return 2.0;
    throw ConfigError("config: unknown norm '" + s + "' (use l1, l2 or a number)");
  }
  return v.get<double>();
}

GridSpec grid_spec_from_json(const json& j) {
  GridSpec spec{require(j, "x_min").get<double>(),
                require(j, "x_max").get<double>(),
                require(j, "y_min").get<double>(),
                require(j, "y_max").get<double>(),
                require(j, "cell_size").get<double>()};
  spec.validate();
  return spec;
}

ordered_json grid_spec_to_json(const GridSpec& s) {
  return {{"x_min", s.x_min},
          {"x_max", s.x_max},
          {"y_min", s.y_min},
          {"y_max", s.y_max},
          {"cell_size", s.cell_size}};
}

}  // namespace

FilterPolicy filter_policy_from_json(const json& f) {
  FilterPolicy policy = FilterPolicy::defaults();
  if (f.contains("allowed_actions")) {
    policy.allowed_actions.clear();
    for (const auto& a : f.at("allowed_actions"))
      policy.allowed_actions.insert(a.get<std::string>());
  }
  if (f.contains("drop_consecutive_duplicates"))
    policy.drop_consecutive_duplicates =
        f.at("drop_consecutive_duplicates").get<bool>();
  return policy;
}

ColumnMapping column_mapping_from_json(const json& c) {
  ColumnMapping columns;
  if (c.contains("attacking_team"))
    columns.attacking_team = c.at("attacking_team").get<std::string>();
  if (c.contains("defending_team"))
    columns.defending_team = c.at("defending_team").get<std::string>();
  if (c.contains("x")) columns.x = c.at("x").get<std::string>();
  if (c.contains("y")) columns.y = c.at("y").get<std::string>();
  if (c.contains("action")) columns.action = c.at("action").get<std::string>();
  return columns;
}

AnalysisConfig analysis_config_from_json(const json& j) {
  AnalysisConfig cfg;
  cfg.input_csv = require(j, "input").get<std::string>();
  if (j.contains("output_dir"))
    cfg.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("columns"))
    cfg.columns = column_mapping_from_json(j.at("columns"));
  if (j.contains("filter"))
    cfg.filter = filter_policy_from_json(j.at("filter"));

  if (j.contains("cv")) {
    const json& c = j.at("cv");
    if (c.contains("folds")) cfg.cv.folds = c.at("folds").get<int>();
    if (c.contains("seed")) cfg.cv.seed = c.at("seed").get<std::uint64_t>();
    if (c.contains("shuffle")) cfg.cv.shuffle = c.at("shuffle").get<bool>();
  }

  if (j.contains("candidate_grid")) {
    const json& g = j.at("candidate_grid");
    if (g.contains("values")) {
      cfg.candidates.values = g.at("values").get<std::vector<double>>();
    } else {
      cfg.candidates = CandidateGrid::log_spaced(
          require(g, "min").get<double>(), require(g, "max").get<double>(),
          require(g, "count").get<int>());
    }
    cfg.candidates.validate();
  }

  if (j.contains("grid")) cfg.grid = grid_spec_from_json(j.at("grid"));

  if (j.contains("cost")) {
    const json& c = j.at("cost");
    if (c.contains("p")) cfg.cost.p = c.at("p").get<double>();
    if (c.contains("norm")) cfg.cost.norm_order = norm_order_from_json(c.at("norm"));
    cfg.cost.validate();
  }

  if (j.contains("solver")) {
    const std::string s = j.at("solver").get<std::string>();
    if (s == "exact")
      cfg.solver = SolverChoice::kExact;
    else if (s == "sinkhorn")
      cfg.solver = SolverChoice::kSinkhorn;
    else
      throw ConfigError("config: unknown solver '" + s + "'");
  }
  if (j.contains("sinkhorn")) {
    const json& s = j.at("sinkhorn");
    if (s.contains("epsilon"))
      cfg.sinkhorn_epsilon = s.at("epsilon").get<double>();
    if (s.contains("max_iters"))
      cfg.sinkhorn_max_iters = s.at("max_iters").get<int>();
    if (s.contains("tol")) cfg.sinkhorn_tol = s.at("tol").get<double>();
  }

  if (j.contains("mass_floor"))
    cfg.mass_floor = j.at("mass_floor").get<double>();
  if (j.contains("min_subset_size"))
    cfg.min_subset_size = j.at("min_subset_size").get<std::size_t>();
  return cfg;
}

ordered_json analysis_config_to_json(const AnalysisConfig& cfg) {
  ordered_json j;
  j["input"] = cfg.input_csv;
  j["output_dir"] = cfg.output_dir;
  j["columns"] = {{"attacking_team", cfg.columns.attacking_team},
                  {"defending_team", cfg.columns.defending_team},
                  {"x", cfg.columns.x},
                  {"y", cfg.columns.y},
                  {"action", cfg.columns.action}};
  j["filter"] = {{"allowed_actions",
                  std::vector<std::string>(cfg.filter.allowed_actions.begin(),
                                           cfg.filter.allowed_actions.end())},
                 {"drop_consecutive_duplicates",
                  cfg.filter.drop_consecutive_duplicates}};
  j["cv"] = {{"folds", cfg.cv.folds},
             {"seed", cfg.cv.seed},
             {"shuffle", cfg.cv.shuffle}};
  j["candidate_grid"] = {{"values", cfg.candidates.values}};
  j["grid"] = grid_spec_to_json(cfg.grid);
  j["cost"] = {{"p", cfg.cost.p}, {"norm", cfg.cost.norm_order}};
  j["solver"] = cfg.solver == SolverChoice::kExact ? "exact" : "sinkhorn";
  j["sinkhorn"] = {{"epsilon", cfg.sinkhorn_epsilon},
                   {"max_iters", cfg.sinkhorn_max_iters},
                   {"tol", cfg.sinkhorn_tol}};
  j["mass_floor"] = cfg.mass_floor;
  j["min_subset_size"] = cfg.min_subset_size;
  return j;
}

SeasonConfig season_config_from_json(const json& j) {
  SeasonConfig cfg;
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("rounds")) cfg.rounds = j.at("rounds").get<int>();
  for (const json& t : require(j, "teams")) {
    TeamProfile team;
    team.name = require(t, "name").get<std::string>();
    if (t.contains("actions_per_match")) {
      const json& a = t.at("actions_per_match");
      team.actions_per_match.mean = require(a, "mean").get<double>();
      if (a.contains("spread"))
        team.actions_per_match.spread = a.at("spread").get<double>();
    }
    for (const json& c : require(t, "components")) {
      MixtureComponent comp;
      comp.weight = require(c, "weight").get<double>();
      const auto mean = require(c, "mean").get<std::vector<double>>();
      const auto sigma = require(c, "sigma").get<std::vector<double>>();
      if (mean.size() != 2 || sigma.size() != 2)
        throw ConfigError("season config: mean/sigma must be [x, y] pairs");
      comp.mean = {mean[0], mean[1]};
      comp.sigma = {sigma[0], sigma[1]};
      team.components.push_back(comp);
    }
    cfg.teams.push_back(std::move(team));
  }
  cfg.validate();
  return cfg;
}

ordered_json season_config_to_json(const SeasonConfig& cfg) {
  ordered_json j;
  j["seed"] = cfg.seed;
  j["rounds"] = cfg.rounds;
  j["teams"] = ordered_json::array();
  for (const TeamProfile& t : cfg.teams) {
    ordered_json team;
    team["name"] = t.name;
    team["actions_per_match"] = {{"mean", t.actions_per_match.mean},
                                 {"spread", t.actions_per_match.spread}};
    team["components"] = ordered_json::array();
    for (const MixtureComponent& c : t.components)
      team["components"].push_back({{"weight", c.weight},
                                    {"mean", {c.mean.x, c.mean.y}},
                                    {"sigma", {c.sigma.x, c.sigma.y}}});
    j["teams"].push_back(std::move(team));
  }
  return j;
}

ColorMap colormap_from_json(const json& j) {
  ColorMap map;
  const std::string kind = require(j, "kind").get<std::string>();
  if (kind == "sequential")
    map.kind = ColorMapKind::kSequential;
  else if (kind == "diverging")
    map.kind = ColorMapKind::kDiverging;
  else
    throw ConfigError("colormap: kind must be 'sequential' or 'diverging'");
  for (const json& a : require(j, "anchors")) {
    if (!a.is_array() || a.size() != 4)
      throw ConfigError("colormap: anchors must be [t, r, g, b] arrays");
    ColorAnchor anchor;
    anchor.t = a[0].get<double>();
    for (int c = 0; c < 3; ++c) {
      const int v = a[c + 1].get<int>();
      if (v < 0 || v > 255)
        throw ConfigError("colormap: channel values must be 0..255");
      anchor.rgb[c] = static_cast<std::uint8_t>(v);
    }
    map.anchors.push_back(anchor);
  }
  map.validate();
  return map;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open JSON file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("JSON parse error in " + path + ": " + e.what());
  }
}

AnalysisConfig load_analysis_config(const std::string& path) {
  return analysis_config_from_json(load_json_file(path));
}

SeasonConfig load_season_config(const std::string& path) {
  return season_config_from_json(load_json_file(path));
}

ColorMap load_colormap(const std::string& path) {
  return colormap_from_json(load_json_file(path));
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf, 16);
}

}  // namespace pitchkde
