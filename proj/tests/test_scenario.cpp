#include <string>
#include <variant>
#include <vector>

#include "blackwell/errors.hpp"
#include "blackwell/game.hpp"
#include "blackwell/geometry.hpp"
#include "blackwell/scenario.hpp"
#include "doctest.h"

using namespace blackwell;
using geom::Point;

TEST_CASE("builtin catalogue") {
  auto names = scenario::builtin_names();
  REQUIRE(names.size() == 5);
  for (const char* expected : {"appendixA-S0", "appendixA-S1", "appendixA-S2",
                               "pure-pennies-halfline", "lx-minimal-forcible"}) {
    bool found = false;
    for (const auto& n : names) found = found || n == expected;
    CHECK_MESSAGE(found, expected);
  }
}

TEST_CASE("builtin appendixA-S0") {
  auto s = scenario::load_scenario("appendixA-S0");
  CHECK(s.name == "appendixA-S0");
  CHECK(game::is_mixed(s.game));
  CHECK(game::base(s.game).d == 2);
  CHECK(s.target == "S0");
  CHECK(s.adversary == "random");
  const auto& S = s.targets.at("S0");
  const auto* seg = std::get_if<geom::Segment>(&S.rep());
  REQUIRE(seg != nullptr);
  CHECK(seg->a == Point{0.0, 0.0});
  CHECK(seg->b == Point{0.5, 0.5});
}

TEST_CASE("builtin appendixA-S1 is the sampled two-arm cloud") {
  auto s = scenario::load_scenario("appendixA-S1");
  CHECK(s.adversary == "hstar");
  const auto& S = s.targets.at("S1");
  const auto* cloud = std::get_if<geom::PointCloud>(&S.rep());
  REQUIRE(cloud != nullptr);
  CHECK(cloud->points.size() == 6);
  CHECK(cloud->h == 0.25);
  CHECK(S.resolution() == 0.25);
}

TEST_CASE("builtin appendixA-S2 is a three-piece union") {
  auto s = scenario::load_scenario("appendixA-S2");
  const auto& S = s.targets.at("S2");
  const auto* uni = std::get_if<geom::UnionSet>(&S.rep());
  REQUIRE(uni != nullptr);
  CHECK(uni->members.size() == 3);
  CHECK_FALSE(S.is_convex());
}

TEST_CASE("builtin pure pennies") {
  auto s = scenario::load_scenario("pure-pennies-halfline");
  CHECK_FALSE(game::is_mixed(s.game));
  CHECK(game::base(s.game).d == 1);
  CHECK(s.adversary == "bestresponse");
  CHECK(s.targets.count("halfline") == 1);
}

TEST_CASE("scenario JSON round-trip is byte identical") {
  for (const auto& name : scenario::builtin_names()) {
    auto s = scenario::load_scenario(name);
    std::string once = scenario::to_json(s);
    auto back = scenario::from_json_text(once, s.name);
    CHECK(scenario::to_json(back) == once);
    CHECK(back.target == s.target);
    CHECK(back.adversary == s.adversary);
    CHECK(back.targets.size() == s.targets.size());
  }
}

TEST_CASE("unknown scenario name") {
  CHECK_THROWS_AS(scenario::load_scenario("no-such-scenario"), ParseError);
}

TEST_CASE("target descriptors") {
  auto ball = scenario::target_from_json_text(R"({"ball":{"center":[0,0],"radius":1}})");
  CHECK(std::holds_alternative<geom::Ball>(ball.rep()));
  auto seg = scenario::target_from_json_text(R"({"segment":{"a":[0],"b":[1]}})");
  CHECK(std::holds_alternative<geom::Segment>(seg.rep()));
  auto hull = scenario::target_from_json_text(R"({"hull":{"vertices":[[0,0],[1,0],[0,1]]}})");
  CHECK(std::holds_alternative<geom::HullOfPoints>(hull.rep()));
  auto cloud = scenario::target_from_json_text(R"({"cloud":{"points":[[0,0]],"h":0.1}})");
  const auto* pc = std::get_if<geom::PointCloud>(&cloud.rep());
  REQUIRE(pc != nullptr);
  CHECK(pc->h == 0.1);
  auto uni = scenario::target_from_json_text(
      R"({"union":[{"segment":{"a":[0,0],"b":[1,0]}},{"ball":{"center":[0,0.5],"radius":0.1}}]})");
  CHECK(std::holds_alternative<geom::UnionSet>(uni.rep()));

  // Round-trip through the serializer for each representation.
  for (const auto* text :
       {R"({"ball":{"center":[0,0],"radius":1}})", R"({"segment":{"a":[0],"b":[1]}})"}) {
    auto S = scenario::target_from_json_text(text);
    auto again = scenario::target_from_json_text(scenario::target_to_json(S));
    CHECK(scenario::target_to_json(again) == scenario::target_to_json(S));
  }

  CHECK_THROWS_AS(scenario::target_from_json_text("not json"), ParseError);
  CHECK_THROWS_AS(scenario::target_from_json_text(R"({"blob":1})"), ParseError);
  CHECK_THROWS_AS(
      scenario::target_from_json_text(R"({"ball":{"center":[0,0],"radius":1},"segment":{"a":[0],"b":[1]}})"),
      ParseError);
}

TEST_CASE("game descriptors") {
  const char* text = R"({
    "mode": "mixed",
    "d": 2,
    "payoffs": [[[1,0],[0,0]],[[0,0],[0,1]]]
  })";
  auto g = scenario::game_from_json_text(text);
  CHECK(game::is_mixed(g));
  CHECK(game::base(g).m == 2);
  CHECK(game::base(g).d == 2);
  auto again = scenario::game_from_json_text(scenario::game_to_json(g));
  CHECK(scenario::game_to_json(again) == scenario::game_to_json(g));

  auto pure = scenario::game_from_json_text(R"({"mode":"pure","payoffs":[[[1],[-1]],[[-1],[1]]]})");
  CHECK_FALSE(game::is_mixed(pure));

  CHECK_THROWS_AS(scenario::game_from_json_text(R"({"payoffs":[]})"), ParseError);
  CHECK_THROWS_AS(
      scenario::game_from_json_text(R"({"d":3,"payoffs":[[[1,0],[0,0]],[[0,0],[0,1]]]})"),
      ValidationError);
  CHECK_THROWS_AS(scenario::game_from_json_text("{"), ParseError);
}

TEST_CASE("explicit gamma survives the round trip") {
  auto g = scenario::game_from_json_text(
      R"({"mode":"mixed","payoffs":[[[1,0],[0,0]],[[0,0],[0,1]]],"gamma":2.5})");
  CHECK(game::gamma_of(g) == 2.5);
  auto again = scenario::game_from_json_text(scenario::game_to_json(g));
  CHECK(game::gamma_of(again) == 2.5);
}

TEST_CASE("scenario validation") {
  // Target dimension must match the game payoff dimension.
  const char* bad_dim = R"({
    "game": {"mode":"mixed","d":2,"payoffs":[[[1,0],[0,0]],[[0,0],[0,1]]]},
    "targets": {"T": {"segment":{"a":[0],"b":[1]}}},
    "target": "T"
  })";
  CHECK_THROWS_AS(scenario::from_json_text(bad_dim), ValidationError);
  // The primary target key must resolve.
  const char* bad_key = R"({
    "game": {"mode":"mixed","d":2,"payoffs":[[[1,0],[0,0]],[[0,0],[0,1]]]},
    "targets": {"T": {"segment":{"a":[0,0],"b":[1,0]}}},
    "target": "missing"
  })";
  CHECK_THROWS_AS(scenario::from_json_text(bad_key), ValidationError);
  CHECK_THROWS_AS(scenario::from_json_text("[1,2]"), ParseError);
}

TEST_CASE("lp descriptors") {
  const char* text = R"({
    "direction": "max",
    "objective": [1, 1],
    "A": [[1, 0], [0, 1]],
    "rhs": [1, 2],
    "senses": ["<=", "<="]
  })";
  auto prog = scenario::lp_from_json_text(text);
  auto sol = lp::solve_lp(prog);
  CHECK(sol.status == lp::LPStatus::Optimal);
  CHECK(sol.value == doctest::Approx(3.0).epsilon(1e-9));

  const char* free_text = R"({
    "direction": "min",
    "objective": [1],
    "A": [[1]],
    "rhs": [-5],
    "senses": [">="],
    "free": [0]
  })";
  auto prog2 = scenario::lp_from_json_text(free_text);
  REQUIRE(prog2.free_vars.size() == 1);
  CHECK(prog2.free_vars[0]);
  auto sol2 = lp::solve_lp(prog2);
  CHECK(sol2.value == doctest::Approx(-5.0).epsilon(1e-9));

  CHECK_THROWS_AS(scenario::lp_from_json_text(R"({"direction":"sideways","objective":[1],
    "A":[[1]],"rhs":[1],"senses":["<="]})"),
                  ParseError);
  CHECK_THROWS_AS(scenario::lp_from_json_text(R"({"direction":"min","objective":[1],
    "A":[[1]],"rhs":[1],"senses":["<="],"free":[3]})"),
                  ValidationError);
}

TEST_CASE("run reports serialize deterministically") {
  scenario::RunReport r;
  r.scenario = "appendixA-S0";
  r.mode = "approach";
  r.outcome = "pass";
  r.artifacts = {"trajectory.csv"};
  r.wall_seconds = 1.25;
  r.seeds = {7};
  std::string a = scenario::report_to_json(r);
  std::string b = scenario::report_to_json(r);
  CHECK(a == b);
  CHECK(a.find("appendixA-S0") != std::string::npos);
  CHECK(a.find("trajectory.csv") != std::string::npos);
}
