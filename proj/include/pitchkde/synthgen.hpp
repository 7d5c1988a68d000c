#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pitchkde/ingest.hpp"
#include "pitchkde/kde.hpp"

namespace pitchkde {

// One lobe of a team's spatial strategy: a truncated Gaussian on the pitch.
struct MixtureComponent {
  double weight = 1.0;
  Vec2 mean;
  Vec2 sigma;  // standard deviations, meters
};

struct ActionCount {
  double mean = 300.0;
  double spread = 30.0;  // standard deviation of the per-match count
};

struct TeamProfile {
  std::string name;
  std::vector<MixtureComponent> components;
  ActionCount actions_per_match;

  void validate() const;
};

struct SeasonConfig {
  std::vector<TeamProfile> teams;
  int rounds = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

// Simulates a season: per round every ordered team pair meets once and the
// attacking side's action locations are drawn from its mixture, rejection-
// sampled onto the pitch. Each match uses a sub-seed derived from
// (seed, round, home, away), so output is deterministic regardless of
// generation order.
std::vector<EventRecord> generate_season(const SeasonConfig& cfg);

// Averages the teams' mixtures into a single profile (used to build a
// league-typical team in tests and demo configs).
TeamProfile league_average_profile(const std::vector<TeamProfile>& teams,
                                   const std::string& name);

}  // namespace pitchkde
