#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blackwell/game.hpp"
#include "blackwell/geometry.hpp"
#include "blackwell/lp.hpp"

namespace blackwell::scenario {

// A named experiment: game, named target sets, default bindings. Built-ins
// cover the bilinear simplex game with S0/S1/S2, the pure pennies halfline,
// and the minimal 1-forcible segment.
struct Scenario {
  std::string name;
  game::Game game;
  std::map<std::string, geom::TargetSet> targets;
  std::string target;  // key of the primary target
  std::string adversary = "random";
  std::optional<int> grid_count;
  std::string notes;
};

std::vector<std::string> builtin_names();

// Registered name, or a path to a JSON scenario file.
Scenario load_scenario(const std::string& name_or_path);

// JSON round-trip; from_json_text(to_json(s)) reproduces the structure.
std::string to_json(const Scenario& s);
Scenario from_json_text(const std::string& text, const std::string& name_hint = "inline");

// Shared JSON descriptor parsers (used by the CLI file modes).
geom::TargetSet target_from_json_text(const std::string& text);
std::string target_to_json(const geom::TargetSet& S);
game::Game game_from_json_text(const std::string& text);
std::string game_to_json(const game::Game& g);
lp::LinearProgram lp_from_json_text(const std::string& text);

struct RunReport {
  std::string scenario;
  std::string mode;
  std::string outcome;
  std::vector<std::string> artifacts;
  double wall_seconds = 0.0;
  std::vector<unsigned long long> seeds;
};
std::string report_to_json(const RunReport& r);

}  // namespace blackwell::scenario
