#include <string>
#include <vector>

#include <doctest.h>

#include "pitchkde/errors.hpp"
#include "pitchkde/ingest.hpp"

using namespace pitchkde;

namespace {

// The sample possession from the dataset description: one St Helens attack
// against Salford, eight actions, all at distinct locations.
const char* kSamplePossession =
    "attacking_team,defending_team,x,y,action\n"
    "St Helens,Salford,9,4,Catch\n"
    "St Helens,Salford,9,6,Run\n"
    "St Helens,Salford,14,11,Pass\n"
    "St Helens,Salford,22,13,Pass\n"
    "St Helens,Salford,12,12,Run\n"
    "St Helens,Salford,37,16,Run\n"
    "St Helens,Salford,36,24,Run\n"
    "St Helens,Salford,54,35,Kick\n";

}  // namespace

TEST_CASE("the sample possession parses into eight clean records") {
  const ParseResult r = parse_events_text(kSamplePossession);
  REQUIRE(r.records.size() == 8);
  CHECK(r.issues.empty());
  const EventRecord& first = r.records.front();
  CHECK(first.attacking_team == "St Helens");
  CHECK(first.defending_team == "Salford");
  CHECK(first.x == 9.0);
  CHECK(first.y == 4.0);
  CHECK(first.action == "Catch");
  // All eight survive the default filter: no consecutive duplicates.
  const FilterResult f = filter_attacking(r.records, FilterPolicy::defaults());
  CHECK(f.events.size() == 8);
  CHECK(f.summary.dropped_duplicate == 0);
}

TEST_CASE("an empty file with a header parses to an empty list") {
  const ParseResult r =
      parse_events_text("attacking_team,defending_team,x,y,action\n");
  CHECK(r.records.empty());
  CHECK(r.issues.empty());
}

TEST_CASE("rows outside the pitch are rejected with their line numbers") {
  const std::string csv =
      "attacking_team,defending_team,x,y,action\n"
      "A,B,71,4,Run\n"       // x too large
      "A,B,30,40,Run\n"      // fine
      "A,B,5,-10.5,Catch\n"  // y below the own try area
      "A,B,5,110.5,Catch\n";
  const ParseResult r = parse_events_text(csv);
  CHECK(r.records.size() == 1);
  REQUIRE(r.issues.size() == 3);
  CHECK(r.issues[0].row == 2);
  CHECK(r.issues[1].row == 4);
  CHECK(r.issues[2].row == 5);
  for (const RowIssue& i : r.issues)
    CHECK(i.reason.find("outside") != std::string::npos);
}

TEST_CASE("missing schema columns throw, malformed rows are collected") {
  CHECK_THROWS_AS(parse_events_text("team,x,y\nA,1,2\n"), SchemaError);
  CHECK_THROWS_AS(parse_events_text(""), SchemaError);

  const std::string csv =
      "attacking_team,defending_team,x,y,action\n"
      "A,B,not_a_number,4,Run\n"
      "A,A,5,5,Run\n"
      ",B,5,5,Run\n"
      "A,B,5\n";
  const ParseResult r = parse_events_text(csv);
  CHECK(r.records.empty());
  REQUIRE(r.issues.size() == 4);
  CHECK(r.issues[0].reason == "unparseable coordinate");
  CHECK(r.issues[1].reason == "attacking and defending team are equal");
  CHECK(r.issues[2].reason == "empty team name");
  CHECK(r.issues[3].reason == "too few fields");
}

TEST_CASE("column mapping adapts foreign headers to the canonical schema") {
  const std::string csv =
      "att,def,px,py,what\n"
      "A,B,10,20,Run\n";
  ColumnMapping mapping;
  mapping.attacking_team = "att";
  mapping.defending_team = "def";
  mapping.x = "px";
  mapping.y = "py";
  mapping.action = "what";
  const ParseResult r = parse_events_text(csv, mapping);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].x == 10.0);
  CHECK(r.records[0].action == "Run");
}

TEST_CASE("quoted fields with commas survive a round trip") {
  std::vector<EventRecord> events = {{"Team, The", "Other \"quoted\"", 5, 6, "Run"}};
  const std::string csv = events_to_csv(events);
  const ParseResult r = parse_events_text(csv);
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].attacking_team == "Team, The");
  CHECK(r.records[0].defending_team == "Other \"quoted\"");
}

TEST_CASE("filter drops disallowed actions and consecutive duplicates") {
  std::vector<EventRecord> events = {
      {"A", "B", 9, 4, "Catch"},
      {"A", "B", 9, 4, "Run"},     // duplicate location, same attacker
      {"A", "B", 9, 4, "Tackle"},  // disallowed action
      {"A", "B", 12, 8, "Run"},
      {"B", "A", 12, 8, "Run"},    // same spot, different attacker: kept
      {"A", "B", 9, 4, "Run"},     // not consecutive with the first any more
  };
  const FilterResult f = filter_attacking(events, FilterPolicy::defaults());
  CHECK(f.events.size() == 4);
  CHECK(f.summary.kept == 4);
  CHECK(f.summary.dropped_duplicate == 1);
  CHECK(f.summary.dropped_action == 1);
}

TEST_CASE("duplicate matching compares against the previous kept row") {
  // The middle row is removed by the action filter; the third row still
  // duplicates the first kept row's location and must go.
  std::vector<EventRecord> events = {
      {"A", "B", 9, 4, "Catch"},
      {"A", "B", 9, 4, "VideoReferee"},
      {"A", "B", 9, 4, "Run"},
  };
  const FilterResult f = filter_attacking(events, FilterPolicy::defaults());
  CHECK(f.events.size() == 1);
  CHECK(f.summary.dropped_action == 1);
  CHECK(f.summary.dropped_duplicate == 1);
}

TEST_CASE("filtering is idempotent and respects a permissive policy") {
  std::vector<EventRecord> events = {
      {"A", "B", 1, 1, "Run"}, {"A", "B", 2, 2, "Odd"}, {"A", "B", 1, 1, "Run"}};
  FilterPolicy allow_all;
  allow_all.allowed_actions = {"Run", "Odd"};
  allow_all.drop_consecutive_duplicates = true;
  const FilterResult once = filter_attacking(events, allow_all);
  CHECK(once.events.size() == 3);  // no consecutive duplicates present
  const FilterResult twice = filter_attacking(once.events, allow_all);
  CHECK(twice.events.size() == once.events.size());

  FilterPolicy empty;
  CHECK_THROWS_AS(filter_attacking(events, empty), InvalidArgumentError);
}

TEST_CASE("two-team data partitions into five subsets") {
  std::vector<EventRecord> events;
  for (int i = 0; i < 4; ++i) events.push_back({"A", "B", 10.0 + i, 20, "Run"});
  for (int i = 0; i < 3; ++i) events.push_back({"B", "A", 30.0 + i, 40, "Run"});
  const PartitionResult parts = partition(events);
  CHECK(parts.subsets.size() == 5);  // league + 2 teams + 2 pairs
  CHECK(parts.notices.empty());

  const PartitionKey league{PartitionKind::kLeague, "", ""};
  const PartitionKey team_a{PartitionKind::kTeam, "A", ""};
  const PartitionKey a_vs_b{PartitionKind::kTeamVsOpponent, "A", "B"};
  CHECK(parts.subsets.at(league).size() == 7);
  CHECK(parts.subsets.at(team_a).size() == 4);
  CHECK(parts.subsets.at(a_vs_b).size() == 4);
  CHECK(parts.subsets.at(a_vs_b).label() == "A vs B");
}

TEST_CASE("partition sizes are conserved across levels") {
  std::vector<EventRecord> events;
  const char* teams[] = {"A", "B", "C"};
  int k = 0;
  for (const char* att : teams)
    for (const char* def : teams) {
      if (att == def) continue;
      for (int i = 0; i <= k % 3; ++i)
        events.push_back({att, def, 5.0 + k, 50.0, "Pass"});
      ++k;
    }
  const PartitionResult parts = partition(events);

  std::size_t league = 0, team_total = 0, pair_total = 0;
  std::map<std::string, std::size_t> per_team_pairs, per_team;
  for (const auto& [key, samples] : parts.subsets) {
    switch (key.kind) {
      case PartitionKind::kLeague:
        league = samples.size();
        break;
      case PartitionKind::kTeam:
        team_total += samples.size();
        per_team[key.team] = samples.size();
        break;
      case PartitionKind::kTeamVsOpponent:
        pair_total += samples.size();
        per_team_pairs[key.team] += samples.size();
        break;
    }
  }
  CHECK(league == events.size());
  CHECK(team_total == events.size());
  CHECK(pair_total == events.size());
  for (const auto& [team, total] : per_team_pairs)
    CHECK(per_team.at(team) == total);
}

TEST_CASE("teams that never attack are reported, empty subsets omitted") {
  std::vector<EventRecord> events = {{"A", "B", 1, 1, "Run"},
                                     {"A", "B", 2, 2, "Run"}};
  const PartitionResult parts = partition(events);
  CHECK(parts.subsets.size() == 3);  // league, team A, A vs B
  REQUIRE(parts.notices.size() == 1);
  CHECK(parts.notices[0].find("'B'") != std::string::npos);
}
