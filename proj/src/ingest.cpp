#include "pitchkde/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pitchkde/detail/text.hpp"
#include "pitchkde/errors.hpp"

namespace pitchkde {

const std::vector<std::string>& default_actions() {
  static const std::vector<std::string> actions = {"Catch", "Run", "Pass",
                                                   "Kick"};
  return actions;
}

FilterPolicy FilterPolicy::defaults() {
  FilterPolicy policy;
  policy.allowed_actions.insert(default_actions().begin(),
                                default_actions().end());
  policy.drop_consecutive_duplicates = true;
  return policy;
}

namespace {

// RFC 4180-ish field splitter: handles quoted fields and doubled quotes.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::size_t find_column(const std::vector<std::string>& header,
                        const std::string& mapped,
                        const std::string& canonical) {
  const std::string& wanted = mapped.empty() ? canonical : mapped;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (std::string(detail::trim(header[i])) == wanted) return i;
  }
  throw SchemaError("missing column '" + wanted + "' in event CSV header");
}

}  // namespace

ParseResult parse_events_text(const std::string& csv_text,
                              const ColumnMapping& mapping) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line))
    throw SchemaError("event CSV is empty (no header row)");

  const auto header = split_csv_line(line);
  const std::size_t col_att = find_column(header, mapping.attacking_team,
                                          "attacking_team");
  const std::size_t col_def = find_column(header, mapping.defending_team,
                                          "defending_team");
  const std::size_t col_x = find_column(header, mapping.x, "x");
  const std::size_t col_y = find_column(header, mapping.y, "y");
  const std::size_t col_action = find_column(header, mapping.action, "action");

  ParseResult result;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    const std::size_t needed =
        std::max({col_att, col_def, col_x, col_y, col_action}) + 1;
    if (fields.size() < needed) {
      result.issues.push_back({row, "too few fields"});
      continue;
    }

    EventRecord rec;
    rec.attacking_team = detail::trim(fields[col_att]);
    rec.defending_team = detail::trim(fields[col_def]);
    rec.action = detail::trim(fields[col_action]);
    const auto x = detail::parse_double(fields[col_x]);
    const auto y = detail::parse_double(fields[col_y]);

    if (rec.attacking_team.empty() || rec.defending_team.empty()) {
      result.issues.push_back({row, "empty team name"});
      continue;
    }
    if (rec.attacking_team == rec.defending_team) {
      result.issues.push_back({row, "attacking and defending team are equal"});
      continue;
    }
    if (!x || !y) {
      result.issues.push_back({row, "unparseable coordinate"});
      continue;
    }
    rec.x = *x;
    rec.y = *y;
    if (!is_on_pitch({rec.x, rec.y})) {
      result.issues.push_back({row, "coordinates outside the pitch"});
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

ParseResult parse_events(const std::string& path, const ColumnMapping& mapping) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open event CSV: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_events_text(buf.str(), mapping);
}

FilterResult filter_attacking(const std::vector<EventRecord>& events,
                              const FilterPolicy& policy) {
  if (policy.allowed_actions.empty())
    throw InvalidArgumentError("FilterPolicy: allowed_actions is empty");

  FilterResult result;
  const EventRecord* last_kept = nullptr;
  for (const EventRecord& e : events) {
    if (!policy.allowed_actions.contains(e.action)) {
      ++result.summary.dropped_action;
      continue;
    }
    if (policy.drop_consecutive_duplicates && last_kept &&
        last_kept->attacking_team == e.attacking_team && last_kept->x == e.x &&
        last_kept->y == e.y) {
      ++result.summary.dropped_duplicate;
      continue;
    }
    result.events.push_back(e);
    last_kept = &result.events.back();
  }
  result.summary.kept = result.events.size();
  return result;
}

std::string PartitionKey::label() const {
  switch (kind) {
    case PartitionKind::kLeague:
      return "league";
    case PartitionKind::kTeam:
      return team;
    case PartitionKind::kTeamVsOpponent:
      return team + " vs " + opponent;
  }
  return {};
}

PartitionResult partition(const std::vector<EventRecord>& events) {
  std::vector<Vec2> league_points;
  std::map<std::string, std::vector<Vec2>> team_points;
  std::map<std::pair<std::string, std::string>, std::vector<Vec2>> pair_points;
  std::set<std::string> all_teams;

  for (const EventRecord& e : events) {
    const Vec2 p{e.x, e.y};
    league_points.push_back(p);
    team_points[e.attacking_team].push_back(p);
    pair_points[{e.attacking_team, e.defending_team}].push_back(p);
    all_teams.insert(e.attacking_team);
    all_teams.insert(e.defending_team);
  }

  PartitionResult result;
  for (const std::string& t : all_teams) {
    if (!team_points.contains(t))
      result.notices.push_back("team '" + t + "' has no attacking actions");
  }
  if (!league_points.empty()) {
    PartitionKey key{PartitionKind::kLeague, "", ""};
    result.subsets.emplace(key, SampleSet(std::move(league_points), "league"));
  }
  for (auto& [team, pts] : team_points) {
    PartitionKey key{PartitionKind::kTeam, team, ""};
    result.subsets.emplace(key, SampleSet(std::move(pts), team));
  }
  for (auto& [pair, pts] : pair_points) {
    PartitionKey key{PartitionKind::kTeamVsOpponent, pair.first, pair.second};
    result.subsets.emplace(key,
                           SampleSet(std::move(pts), key.label()));
  }
  return result;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

std::string events_to_csv(const std::vector<EventRecord>& events) {
  std::string out = "attacking_team,defending_team,x,y,action\n";
  for (const EventRecord& e : events) {
    out += csv_field(e.attacking_team);
    out += ',';
    out += csv_field(e.defending_team);
    out += ',';
    out += detail::format_double(e.x);
    out += ',';
    out += detail::format_double(e.y);
    out += ',';
    out += csv_field(e.action);
    out += '\n';
  }
  return out;
}

void write_events_csv(const std::string& path,
                      const std::vector<EventRecord>& events) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write CSV: " + path);
  out << events_to_csv(events);
}

}  // namespace pitchkde
