#include <cstdint>
#include <vector>

#include "blackwell/errors.hpp"
#include "blackwell/game.hpp"
#include "blackwell/geometry.hpp"
#include "blackwell/stochastic.hpp"
#include "doctest.h"

using namespace blackwell;
using game::Action;
using game::Game;
using game::MixedGame;
using game::PureGame;
using geom::Point;
using stochastic::SeededSource;

namespace {
Game simplex_game() {
  return MixedGame{
      PureGame::create({{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.0, 1.0}}})};
}
geom::TargetSet s0() { return geom::TargetSet(geom::Segment{{0.0, 0.0}, {0.5, 0.5}}); }

approach::XStrategy constant_x(Action a) {
  return [a](const approach::Trajectory&) {
    approach::XDecision d;
    d.x = a;
    d.tau = 0.1;
    return d;
  };
}
approach::YStrategy constant_y(Action a) {
  return [a](const approach::Trajectory&, const Action&) { return a; };
}
}  // namespace

TEST_CASE("seeded source is deterministic and labeled") {
  SeededSource a(42), b(42), c(43);
  CHECK(a.seed() == 42);
  CHECK(a.algorithm() == "splitmix64");
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 16; ++i) {
    std::uint64_t va = a.next_u64(), vb = b.next_u64(), vc = c.next_u64();
    all_equal = all_equal && (va == vb);
    any_diff = any_diff || (va != vc);
  }
  CHECK(all_equal);
  CHECK(any_diff);
  for (int i = 0; i < 64; ++i) {
    const double u = a.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK_THROWS_AS(SeededSource(1, "mt19937"), ValidationError);
}

TEST_CASE("sample_index walks the cdf") {
  SeededSource src(7);
  CHECK(src.sample_index({1.0, 0.0}) == 0);
  CHECK(src.sample_index({0.0, 1.0}) == 1);
  CHECK(src.sample_index({0.0, 0.0, 1.0}) == 2);
  int seen0 = 0, seen1 = 0;
  for (int i = 0; i < 200; ++i) (src.sample_index({0.5, 0.5}) == 0 ? seen0 : seen1)++;
  CHECK(seen0 > 0);
  CHECK(seen1 > 0);
  CHECK_THROWS_AS(src.sample_index({}), ValidationError);
}

TEST_CASE("hoeffding horizon frozen values") {
  CHECK(stochastic::hoeffding_horizon(0.1, 1.0, 2) == 450);
  CHECK(stochastic::hoeffding_horizon(0.1, 1.0, 4) == 485);
  CHECK(stochastic::hoeffding_horizon(0.1, 2.0, 2) == 2075);
  // More dimensions or a larger payoff bound require longer horizons.
  CHECK(stochastic::hoeffding_horizon(0.1, 1.0, 4) > stochastic::hoeffding_horizon(0.1, 1.0, 2));
  CHECK(stochastic::hoeffding_horizon(0.1, 2.0, 2) >
        4 * stochastic::hoeffding_horizon(0.1, 1.0, 2));
  CHECK_THROWS_AS(stochastic::hoeffding_horizon(0.0, 1.0, 2), NonPositiveInputError);
  CHECK_THROWS_AS(stochastic::hoeffding_horizon(1.0, 1.0, 2), NonPositiveInputError);
  CHECK_THROWS_AS(stochastic::hoeffding_horizon(0.1, 0.0, 2), NonPositiveInputError);
  CHECK_THROWS_AS(stochastic::hoeffding_horizon(0.1, 1.0, 0), NonPositiveInputError);
}

TEST_CASE("run_stochastic input validation") {
  Game pure = PureGame::create({{{1.0}, {-1.0}}, {{-1.0}, {1.0}}});
  SeededSource src(1);
  CHECK_THROWS_AS(stochastic::run_stochastic(pure, geom::TargetSet(geom::Segment{{-1.0}, {0.0}}),
                                             constant_x(Action::pure(0)),
                                             constant_y(Action::pure(0)), 4, src),
                  KindMismatchError);
  CHECK_THROWS_AS(stochastic::run_stochastic(simplex_game(), s0(), constant_x(Action::pure(0)),
                                             constant_y(Action::pure(0)), 0, src),
                  ValidationError);
}

TEST_CASE("point-mass strategies sample their own expectation") {
  SeededSource src(5);
  auto run = stochastic::run_stochastic(simplex_game(), s0(), constant_x(Action::pure(0)),
                                        constant_y(Action::pure(1)), 32, src);
  REQUIRE(run.rounds.size() == 32);
  REQUIRE(run.expected_view.rounds.size() == 32);
  for (const auto& sr : run.rounds) {
    CHECK(sr.x == 0);
    CHECK(sr.y == 1);
    CHECK(geom::dist(sr.empirical_mean, sr.expected_mean) == 0.0);
  }
}

TEST_CASE("the expected view is the deterministic duel") {
  Game g = simplex_game();
  approach::XStrategy xs = constant_x(Action::mixed({0.3, 0.7}));
  approach::YStrategy ys = approach::make_scripted_adversary(
      {Action::pure(0), Action::pure(1), Action::pure(1)});
  SeededSource src(99);
  auto run = stochastic::run_stochastic(g, s0(), xs, ys, 40, src);
  auto duel = approach::run_duel(g, s0(), xs, ys, 40);
  REQUIRE(duel.rounds.size() == run.expected_view.rounds.size());
  for (size_t t = 0; t < duel.rounds.size(); ++t) {
    CHECK(run.expected_view.rounds[t].phi == duel.rounds[t].phi);  // bitwise
    CHECK(run.expected_view.rounds[t].y.index() == duel.rounds[t].y.index());
  }
}

TEST_CASE("identical seeds reproduce sampled paths bit for bit") {
  Game g = simplex_game();
  approach::XStrategy xs = constant_x(Action::mixed({0.5, 0.5}));
  approach::YStrategy ys = constant_y(Action::mixed({0.25, 0.75}));
  auto a = stochastic::run_stochastic(g, s0(), xs, ys, 64, SeededSource(1234));
  auto b = stochastic::run_stochastic(g, s0(), xs, ys, 64, SeededSource(1234));
  bool same = true;
  for (size_t t = 0; t < 64; ++t)
    same = same && a.rounds[t].x == b.rounds[t].x && a.rounds[t].y == b.rounds[t].y;
  CHECK(same);
  CHECK(a.rounds.back().empirical_mean == b.rounds.back().empirical_mean);
}

TEST_CASE("deviation audit") {
  Game g = simplex_game();
  std::vector<stochastic::StochasticRun> runs;
  for (int s = 0; s < 8; ++s)
    runs.push_back(stochastic::run_stochastic(g, s0(), constant_x(Action::pure(0)),
                                              constant_y(Action::pure(1)), 16,
                                              SeededSource(static_cast<std::uint64_t>(s))));
  auto rep = stochastic::deviation_audit(runs, 0.1, 4);
  CHECK(rep.runs == 8);
  CHECK(rep.deviating == 0);
  CHECK(rep.frequency == 0.0);
  CHECK(rep.pass);

  CHECK_THROWS_AS(stochastic::deviation_audit(runs, 0.1, 20), ValidationError);
  CHECK_THROWS_AS(stochastic::deviation_audit(runs, 0.0, 4), NonPositiveInputError);
  CHECK_THROWS_AS(stochastic::deviation_audit(runs, 0.1, 0), ValidationError);

  // Negative control: a fabricated run whose means split by more than eps.
  stochastic::StochasticRun bad{{}, approach::Trajectory{g, s0(), {}, {}}};
  stochastic::SampledRound sr;
  sr.mu = {1.0};
  sr.nu = {1.0};
  sr.realized = Point{1.0};
  sr.empirical_mean = Point{1.0};
  sr.expected_mean = Point{0.0};
  bad.rounds.push_back(sr);
  // eps small enough that freq 1.0 clears eps + 3 sqrt(eps(1-eps)/1) ~ 0.31.
  auto rep2 = stochastic::deviation_audit({bad}, 0.01, 1);
  CHECK(rep2.deviating == 1);
  CHECK_FALSE(rep2.pass);
}
