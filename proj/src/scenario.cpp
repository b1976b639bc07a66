#include "blackwell/scenario.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "blackwell/errors.hpp"
#include "json.hpp"

namespace blackwell::scenario {

using geom::Point;
using nlohmann::json;

namespace {

json parse_text(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

// Field access on malformed documents (wrong type, missing key) surfaces as
// ParseError with the document kind, never as a raw json exception.
template <typename Fn>
auto guarded(const char* where, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string(where) + ": " + e.what());
  }
}

Point point_from(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("point: expected a nonempty number array");
  Point p;
  for (const auto& v : j) {
    if (!v.is_number()) throw ParseError("point: expected a number array");
    p.push_back(v.get<double>());
  }
  return p;
}

std::vector<Point> points_from(const json& j) {
  if (!j.is_array()) throw ParseError("points: expected an array of points");
  std::vector<Point> out;
  for (const auto& v : j) out.push_back(point_from(v));
  return out;
}

geom::TargetSet target_from(const json& j) {
  if (!j.is_object() || j.size() != 1)
    throw ParseError("target: expected exactly one of ball/segment/hull/cloud/union");
  if (j.contains("ball")) {
    const auto& b = j.at("ball");
    return geom::TargetSet(geom::Ball{point_from(b.at("center")), b.at("radius").get<double>()});
  }
  if (j.contains("segment")) {
    const auto& s = j.at("segment");
    return geom::TargetSet(geom::Segment{point_from(s.at("a")), point_from(s.at("b"))});
  }
  if (j.contains("hull"))
    return geom::TargetSet(geom::HullOfPoints{points_from(j.at("hull").at("vertices"))});
  if (j.contains("cloud")) {
    const auto& c = j.at("cloud");
    return geom::TargetSet(
        geom::PointCloud{points_from(c.at("points")), c.at("h").get<double>()});
  }
  if (j.contains("union")) {
    geom::UnionSet u;
    for (const auto& m : j.at("union")) u.members.push_back(target_from(m));
    return geom::TargetSet(std::move(u));
  }
  throw ParseError("target: unknown descriptor key");
}

json target_to(const geom::TargetSet& S);

json target_rep_to(const geom::Ball& b) {
  return json{{"ball", {{"center", b.center}, {"radius", b.radius}}}};
}
json target_rep_to(const geom::Segment& s) {
  return json{{"segment", {{"a", s.a}, {"b", s.b}}}};
}
json target_rep_to(const geom::HullOfPoints& h) {
  return json{{"hull", {{"vertices", h.vertices}}}};
}
json target_rep_to(const geom::PointCloud& c) {
  return json{{"cloud", {{"points", c.points}, {"h", c.h}}}};
}
json target_rep_to(const geom::UnionSet& u) {
  json arr = json::array();
  for (const auto& m : u.members) arr.push_back(target_to(m));
  return json{{"union", arr}};
}

json target_to(const geom::TargetSet& S) {
  return std::visit([](const auto& rep) { return target_rep_to(rep); }, S.rep());
}

game::Game game_from(const json& j) {
  if (!j.is_object()) throw ParseError("game: expected an object");
  const std::string mode = j.value("mode", std::string("mixed"));
  if (mode != "mixed" && mode != "pure") throw ParseError("game: mode must be pure or mixed");
  const auto& pj = j.at("payoffs");
  if (!pj.is_array() || pj.empty()) throw ParseError("game: payoffs must be a nonempty matrix");
  std::vector<std::vector<Point>> F;
  for (const auto& row : pj) {
    if (!row.is_array() || row.empty()) throw ParseError("game: payoff rows must be nonempty");
    std::vector<Point> r;
    for (const auto& cell : row) r.push_back(point_from(cell));
    F.push_back(std::move(r));
  }
  if (j.contains("d")) {
    const int d = j.at("d").get<int>();
    if (d != static_cast<int>(F[0][0].size()))
      throw ValidationError("game: declared dimension does not match payoff vectors");
  }
  std::optional<double> gamma;
  if (j.contains("gamma") && !j.at("gamma").is_null()) gamma = j.at("gamma").get<double>();
  game::PureGame pg = game::PureGame::create(std::move(F), gamma);
  if (mode == "pure") return pg;
  return game::MixedGame{std::move(pg)};
}

json game_to(const game::Game& g) {
  const auto& pg = game::base(g);
  json payoffs = json::array();
  for (const auto& row : pg.F) {
    json r = json::array();
    for (const auto& cell : row) r.push_back(cell);
    payoffs.push_back(std::move(r));
  }
  return json{{"mode", game::is_mixed(g) ? "mixed" : "pure"},
              {"d", pg.d},
              {"payoffs", std::move(payoffs)},
              {"gamma", pg.gamma}};
}

Scenario scenario_from(const json& j, const std::string& name_hint) {
  Scenario s{std::string(), game_from(j.at("game")), {}, std::string(), "random", {}, {}};
  s.name = j.value("name", name_hint);
  if (!j.contains("targets") || !j.at("targets").is_object() || j.at("targets").empty())
    throw ParseError("scenario: targets must be a nonempty object");
  for (const auto& [key, value] : j.at("targets").items()) {
    const geom::TargetSet set = target_from(value);
    if (set.dimension() != game::base(s.game).d)
      throw ValidationError("scenario: target '" + key + "' dimension differs from the game");
    s.targets.emplace(key, set);
  }
  s.target = j.value("target", s.targets.begin()->first);
  if (s.targets.find(s.target) == s.targets.end())
    throw ValidationError("scenario: primary target '" + s.target + "' is not defined");
  s.adversary = j.value("adversary", std::string("random"));
  if (j.contains("grid_count") && !j.at("grid_count").is_null())
    s.grid_count = j.at("grid_count").get<int>();
  s.notes = j.value("notes", std::string());
  return s;
}

json scenario_to(const Scenario& s) {
  json targets = json::object();
  for (const auto& [key, value] : s.targets) targets[key] = target_to(value);
  json j{{"name", s.name},
         {"game", game_to(s.game)},
         {"targets", std::move(targets)},
         {"target", s.target},
         {"adversary", s.adversary},
         {"notes", s.notes}};
  if (s.grid_count)
    j["grid_count"] = *s.grid_count;
  else
    j["grid_count"] = nullptr;
  return j;
}

game::Game bilinear_simplex_game() {
  std::vector<std::vector<Point>> F = {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.0, 1.0}}};
  return game::MixedGame{game::PureGame::create(std::move(F))};
}

Scenario make_builtin(const std::string& name) {
  if (name == "appendixA-S0") {
    Scenario s{name, bilinear_simplex_game(), {}, "S0", "random", {}, {}};
    s.targets.emplace("S0", geom::TargetSet(geom::Segment{{0.0, 0.0}, {0.5, 0.5}}));
    s.notes = "Bilinear simplex game; diagonal half-segment target (approachable).";
    return s;
  }
  if (name == "appendixA-S1") {
    Scenario s{name, bilinear_simplex_game(), {}, "S1", "hstar", {}, {}};
    s.targets.emplace(
        "S1", geom::TargetSet(geom::PointCloud{{{0.5, 0.0},
                                                {0.75, 0.0},
                                                {1.0, 0.0},
                                                {0.0, 0.5},
                                                {0.0, 0.75},
                                                {0.0, 1.0}},
                                               0.25}));
    s.notes = "Two outer axis arms sampled at h=0.25 (avoidable).";
    return s;
  }
  if (name == "appendixA-S2") {
    Scenario s{name, bilinear_simplex_game(), {}, "S2", "bestresponse", {}, {}};
    geom::UnionSet u;
    u.members.push_back(geom::TargetSet(geom::Segment{{0.0, 0.0}, {1.0, 0.0}}));
    u.members.push_back(geom::TargetSet(geom::Segment{{0.0, 0.0}, {0.0, 0.4}}));
    u.members.push_back(geom::TargetSet(geom::Segment{{0.0, 0.6}, {0.0, 1.0}}));
    s.targets.emplace("S2", geom::TargetSet(std::move(u)));
    s.notes =
        "First action ray united with the second action ray minus its middle fifth; "
        "a superset of an approachable set with no direct approach strategy.";
    return s;
  }
  if (name == "pure-pennies-halfline") {
    std::vector<std::vector<Point>> F = {{{1.0}, {-1.0}}, {{-1.0}, {1.0}}};
    Scenario s{name, game::PureGame::create(std::move(F)), {}, "halfline", "bestresponse",
               {}, {}};
    s.targets.emplace("halfline", geom::TargetSet(geom::Segment{{-1.0}, {0.0}}));
    s.notes = "Matching pennies on the line; (-inf, 0] clipped to the payoff bound.";
    return s;
  }
  if (name == "lx-minimal-forcible") {
    Scenario s{name, bilinear_simplex_game(), {}, "L1", "random", {}, {}};
    s.targets.emplace("L1", geom::TargetSet(geom::Segment{{0.0, 0.0}, {1.0, 0.0}}));
    s.notes = "The first pure action's payoff segment: a minimal 1-forcible set.";
    return s;
  }
  throw ParseError("unknown scenario '" + name + "'");
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"appendixA-S0", "appendixA-S1", "appendixA-S2", "pure-pennies-halfline",
          "lx-minimal-forcible"};
}

Scenario load_scenario(const std::string& name_or_path) {
  for (const std::string& b : builtin_names())
    if (b == name_or_path) return make_builtin(b);
  std::ifstream in(name_or_path);
  if (!in) throw ParseError("scenario '" + name_or_path + "' is not built in or readable");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str(), name_or_path);
}

std::string to_json(const Scenario& s) { return scenario_to(s).dump(2); }

Scenario from_json_text(const std::string& text, const std::string& name_hint) {
  return guarded("scenario",
                 [&] { return scenario_from(parse_text(text, "scenario"), name_hint); });
}

geom::TargetSet target_from_json_text(const std::string& text) {
  return guarded("target", [&] { return target_from(parse_text(text, "target")); });
}

std::string target_to_json(const geom::TargetSet& S) { return target_to(S).dump(2); }

game::Game game_from_json_text(const std::string& text) {
  return guarded("game", [&] { return game_from(parse_text(text, "game")); });
}

std::string game_to_json(const game::Game& g) { return game_to(g).dump(2); }

lp::LinearProgram lp_from_json_text(const std::string& text) {
  return guarded("lp", [&]() -> lp::LinearProgram {
    const json j = parse_text(text, "lp");
    lp::LinearProgram prog;
    const std::string dir = j.value("direction", std::string("min"));
    if (dir == "min")
      prog.direction = lp::Direction::Minimize;
    else if (dir == "max")
      prog.direction = lp::Direction::Maximize;
    else
      throw ParseError("lp: direction must be min or max");
    prog.objective = point_from(j.at("objective"));
    for (const auto& row : j.at("A")) prog.A.push_back(point_from(row));
    prog.rhs = point_from(j.at("rhs"));
    for (const auto& s : j.at("senses")) {
      const std::string t = s.get<std::string>();
      if (t == "<=")
        prog.senses.push_back(lp::Sense::LessEq);
      else if (t == "=")
        prog.senses.push_back(lp::Sense::Eq);
      else if (t == ">=")
        prog.senses.push_back(lp::Sense::GreaterEq);
      else
        throw ParseError("lp: senses entries must be <=, =, or >=");
    }
    if (j.contains("free")) {
      prog.free_vars.assign(prog.objective.size(), false);
      for (const auto& idx : j.at("free")) {
        const int k = idx.get<int>();
        if (k < 0 || k >= static_cast<int>(prog.free_vars.size()))
          throw ValidationError("lp: free index out of range");
        prog.free_vars[k] = true;
      }
    }
    return prog;
  });
}

std::string report_to_json(const RunReport& r) {
  json j{{"scenario", r.scenario},   {"mode", r.mode},
         {"outcome", r.outcome},     {"artifacts", r.artifacts},
         {"wall_seconds", r.wall_seconds}, {"seeds", r.seeds}};
  return j.dump(2);
}

}  // namespace blackwell::scenario
