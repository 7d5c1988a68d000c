#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pitchkde/kde.hpp"

namespace pitchkde {

// One event row: who had the ball, against whom, where, doing what.
struct EventRecord {
  std::string attacking_team;
  std::string defending_team;
  double x = 0.0;
  double y = 0.0;
  std::string action;
};

// Default allow-list: the ball-in-hand action vocabulary.
const std::vector<std::string>& default_actions();

struct FilterPolicy {
  std::set<std::string> allowed_actions;
  bool drop_consecutive_duplicates = true;

  static FilterPolicy defaults();
};

// Maps arbitrary CSV headers onto the canonical schema
// attacking_team,defending_team,x,y,action. Empty string = canonical name.
struct ColumnMapping {
  std::string attacking_team;
  std::string defending_team;
  std::string x;
  std::string y;
  std::string action;
};

struct RowIssue {
  std::size_t row = 0;  // 1-based line number in the file
  std::string reason;
};

struct ParseResult {
  std::vector<EventRecord> records;  // possession order preserved
  std::vector<RowIssue> issues;      // rejected rows with reasons
};

// Reads an event CSV. Missing schema columns throw; malformed or
// out-of-bounds rows are collected into the issue report and skipped.
ParseResult parse_events(const std::string& path,
                         const ColumnMapping& mapping = {});
ParseResult parse_events_text(const std::string& csv_text,
                              const ColumnMapping& mapping = {});

struct FilterSummary {
  std::size_t kept = 0;
  std::size_t dropped_action = 0;
  std::size_t dropped_duplicate = 0;
};

struct FilterResult {
  std::vector<EventRecord> events;
  FilterSummary summary;
};

// Keeps rows whose action is allowed; optionally drops a row whose
// (attacking_team, x, y) repeats the immediately preceding kept row
// (a catch and a run coded at the same spot are one location).
FilterResult filter_attacking(const std::vector<EventRecord>& events,
                              const FilterPolicy& policy);

enum class PartitionKind { kLeague, kTeam, kTeamVsOpponent };

struct PartitionKey {
  PartitionKind kind = PartitionKind::kLeague;
  std::string team;      // set unless kind == kLeague
  std::string opponent;  // set only for kTeamVsOpponent

  std::string label() const;
  friend auto operator<=>(const PartitionKey&, const PartitionKey&) = default;
};

struct PartitionResult {
  std::map<PartitionKey, SampleSet> subsets;
  std::vector<std::string> notices;  // teams observed with no kept actions
};

// Splits events into the league set, one set per attacking team, and one
// per (attacking team, opponent) pair. Empty subsets are omitted.
PartitionResult partition(const std::vector<EventRecord>& events);

// Canonical CSV writer for event records (header + one row per event).
std::string events_to_csv(const std::vector<EventRecord>& events);
void write_events_csv(const std::string& path,
                      const std::vector<EventRecord>& events);

}  // namespace pitchkde
