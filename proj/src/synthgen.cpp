#include "pitchkde/synthgen.hpp"

#include <cmath>
#include <set>

#include "pitchkde/detail/rng.hpp"
#include "pitchkde/errors.hpp"

namespace pitchkde {

void TeamProfile::validate() const {
  if (name.empty()) throw ConfigError("TeamProfile: empty name");
  if (components.empty())
    throw ConfigError("TeamProfile '" + name + "': no mixture components");
  double weight_sum = 0.0;
  for (const MixtureComponent& c : components) {
    if (!(c.weight > 0.0))
      throw ConfigError("TeamProfile '" + name + "': non-positive weight");
    if (!(c.sigma.x > 0.0) || !(c.sigma.y > 0.0))
      throw ConfigError("TeamProfile '" + name + "': non-positive sigma");
    if (!std::isfinite(c.mean.x) || !std::isfinite(c.mean.y))
      throw ConfigError("TeamProfile '" + name + "': non-finite mean");
    weight_sum += c.weight;
  }
  if (std::abs(weight_sum - 1.0) > 1e-9)
    throw ConfigError("TeamProfile '" + name + "': weights must sum to 1");
  if (!(actions_per_match.mean > 0.0) || actions_per_match.spread < 0.0)
    throw ConfigError("TeamProfile '" + name + "': bad actions_per_match");
}

void SeasonConfig::validate() const {
  if (teams.size() < 2) throw ConfigError("SeasonConfig: need at least 2 teams");
  if (rounds < 1) throw ConfigError("SeasonConfig: rounds must be >= 1");
  std::set<std::string> names;
  for (const TeamProfile& t : teams) {
    t.validate();
    if (!names.insert(t.name).second)
      throw ConfigError("SeasonConfig: duplicate team name '" + t.name + "'");
  }
}

namespace {

constexpr std::size_t kMaxRejections = 1000000;

Vec2 draw_location(const TeamProfile& team, detail::Rng& rng) {
  std::size_t failures = 0;
  for (;;) {
    // Component by CDF inversion, then a truncated Gaussian draw.
    double u = rng.uniform();
    const MixtureComponent* comp = &team.components.back();
    double acc = 0.0;
    for (const MixtureComponent& c : team.components) {
      acc += c.weight;
      if (u < acc) {
        comp = &c;
        break;
      }
    }
    const Vec2 p{comp->mean.x + comp->sigma.x * rng.gauss(),
                 comp->mean.y + comp->sigma.y * rng.gauss()};
    if (is_on_pitch(p)) return p;
    if (++failures >= kMaxRejections)
      throw ConfigError("TeamProfile '" + team.name +
                        "': mixture places (almost) no mass on the pitch");
  }
}

}  // namespace

std::vector<EventRecord> generate_season(const SeasonConfig& cfg) {
  cfg.validate();
  const auto& actions = default_actions();
  std::vector<EventRecord> events;

  for (int round = 0; round < cfg.rounds; ++round) {
    for (std::size_t home = 0; home < cfg.teams.size(); ++home) {
      for (std::size_t away = 0; away < cfg.teams.size(); ++away) {
        if (home == away) continue;
        const TeamProfile& attacker = cfg.teams[home];
        detail::Rng rng(detail::mix_seed(cfg.seed,
                                         static_cast<std::uint64_t>(round),
                                         home, away));
        const double raw = attacker.actions_per_match.mean +
                           attacker.actions_per_match.spread * rng.gauss();
        const long count = std::max(0L, std::lround(raw));
        for (long k = 0; k < count; ++k) {
          const Vec2 p = draw_location(attacker, rng);
          EventRecord rec;
          rec.attacking_team = attacker.name;
          rec.defending_team = cfg.teams[away].name;
          rec.x = p.x;
          rec.y = p.y;
          rec.action = actions[rng.uniform_int(actions.size())];
          events.push_back(std::move(rec));
        }
      }
    }
  }
  return events;
}

TeamProfile league_average_profile(const std::vector<TeamProfile>& teams,
                                   const std::string& name) {
  if (teams.empty()) throw ConfigError("league_average_profile: no teams");
  TeamProfile avg;
  avg.name = name;
  double count_mean = 0.0;
  double count_spread = 0.0;
  const double w = 1.0 / static_cast<double>(teams.size());
  for (const TeamProfile& t : teams) {
    t.validate();
    for (const MixtureComponent& c : t.components) {
      MixtureComponent scaled = c;
      scaled.weight = c.weight * w;
      avg.components.push_back(scaled);
    }
    count_mean += w * t.actions_per_match.mean;
    count_spread += w * t.actions_per_match.spread;
  }
  avg.actions_per_match = {count_mean, count_spread};
  return avg;
}

}  // namespace pitchkde
