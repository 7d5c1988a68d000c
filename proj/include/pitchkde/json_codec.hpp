#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "pitchkde/pipeline.hpp"
#include "pitchkde/render.hpp"
#include "pitchkde/synthgen.hpp"

namespace pitchkde {

// JSON <-> config objects for the CLI surfaces. Parsers throw ConfigError
// on unknown shapes; serializers emit a canonical field order so hashes of
// the output are stable.

FilterPolicy filter_policy_from_json(const nlohmann::json& j);
ColumnMapping column_mapping_from_json(const nlohmann::json& j);

AnalysisConfig analysis_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json analysis_config_to_json(const AnalysisConfig& cfg);
AnalysisConfig load_analysis_config(const std::string& path);

SeasonConfig season_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json season_config_to_json(const SeasonConfig& cfg);
SeasonConfig load_season_config(const std::string& path);

ColorMap colormap_from_json(const nlohmann::json& j);
ColorMap load_colormap(const std::string& path);

nlohmann::json load_json_file(const std::string& path);

// FNV-1a (64-bit) over a string, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace pitchkde
