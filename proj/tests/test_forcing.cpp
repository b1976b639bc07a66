#include <cmath>
#include <cstdint>
#include <vector>

#include "blackwell/errors.hpp"
#include "blackwell/forcing.hpp"
#include "blackwell/game.hpp"
#include "blackwell/geometry.hpp"
#include "doctest.h"

using namespace blackwell;
using game::Action;
using game::Game;
using game::MixedGame;
using game::PureGame;
using geom::Halfspace;
using geom::Point;

namespace {
PureGame simplex_base() {
  return PureGame::create({{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {0.0, 1.0}}});
}
PureGame pennies() { return PureGame::create({{{1.0}, {-1.0}}, {{-1.0}, {1.0}}}); }

std::uint64_t splitmix(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
double unit(std::uint64_t& s) { return static_cast<double>(splitmix(s) >> 11) * 0x1.0p-53; }
}  // namespace

TEST_CASE("pennies halfline: 2-forcible but not 1-forcible") {
  Game g = pennies();
  Halfspace H{{1.0}, 0.0};  // z <= 0
  CHECK_FALSE(forcing::x_one_forces_halfspace(g, H).has_value());
  auto two = forcing::x_two_forces_halfspace(g, H);
  REQUIRE(two.has_value());
  REQUIRE(two->response.size() == 2);
  // Column 0 answered by row 1 (payoff -1), column 1 by row 0 (payoff -1).
  CHECK(two->response[0].index() == 1);
  CHECK(two->response[1].index() == 0);
  // Y 2-forces the complement exactly because X cannot 1-force.
  auto ycomp = forcing::y_two_forces_complement(g, H);
  REQUIRE(ycomp.has_value());
  // Y cannot 1-force the complement either (no column is all-positive).
  CHECK_FALSE(forcing::y_one_forces_complement(g, H).has_value());
}

TEST_CASE("mixed simplex game: LP forcing around the scalar value") {
  Game g = MixedGame{simplex_base()};
  const double inv = 1.0 / std::sqrt(2.0);
  const double v = 0.35355339059327373;  // scalarized value along (1,1)/sqrt(2)
  Halfspace above{{inv, inv}, v + 0.01};
  Halfspace below{{inv, inv}, v - 0.01};

  auto one = forcing::x_one_forces_halfspace(g, above);
  REQUIRE(one.has_value());
  REQUIRE(one->witness.has_value());
  // The witness mixture guarantees <lambda, Ef(mu, y)> <= c for both columns.
  const auto& mu = one->witness->weights();
  auto G = game::scalarize(g, above.normal);
  for (int j = 0; j < 2; ++j)
    CHECK(mu[0] * G[0][j] + mu[1] * G[1][j] <= above.offset + 1e-9);

  CHECK_FALSE(forcing::x_one_forces_halfspace(g, below).has_value());
  auto ycomp = forcing::y_two_forces_complement(g, below);
  REQUIRE(ycomp.has_value());
  // The responder answers any mu with a y pushing above the offset.
  Action yr = ycomp->responder(Action::mixed({0.5, 0.5}));
  auto z = game::payoff(g, Action::mixed({0.5, 0.5}), yr);
  CHECK(geom::dot(below.normal, z) > below.offset + 1e-9);
  // Mixed games have full duality: Y even 1-forces the far side.
  auto yone = forcing::y_one_forces_complement(g, below);
  REQUIRE(yone.has_value());
  REQUIRE(yone->witness.has_value());
}

TEST_CASE("mixed 2-force implies 1-force") {
  Game g = MixedGame{simplex_base()};
  std::uint64_t s = 7;
  for (int trial = 0; trial < 40; ++trial) {
    Point lambda{unit(s) * 2.0 - 1.0, unit(s) * 2.0 - 1.0};
    if (geom::norm(lambda) < 1e-6) continue;
    lambda = geom::normalized(lambda);
    const double c = unit(s) * 2.0 - 1.0;
    // Skip offsets within solver tolerance of the value: the two tests use
    // different LP orientations and may disagree inside that band.
    if (std::abs(c - game::scalar_value(g, lambda)) < 1e-6) continue;
    Halfspace H{lambda, c};
    const bool two = forcing::x_two_forces_halfspace(g, H).has_value();
    const bool one = forcing::x_one_forces_halfspace(g, H).has_value();
    CHECK(two == one);  // minimax: the quantifier order is free
  }
}

TEST_CASE("set 2-forcing on payoff segments") {
  PureGame g = simplex_base();
  geom::TargetSet L1(geom::Segment{{0.0, 0.0}, {1.0, 0.0}});
  auto cert = forcing::x_two_forces_set(g, L1);
  REQUIRE(cert.has_value());
  REQUIRE(cert->response.size() == 2);
  for (int j = 0; j < 2; ++j) {
    Point z = g.F[cert->response[j].index()][j];
    CHECK(geom::project(z, L1).distance <= 1e-9);
  }
  // A short far-away segment is not 2-forcible.
  geom::TargetSet far(geom::Segment{{0.9, 0.9}, {1.0, 1.0}});
  CHECK_FALSE(forcing::x_two_forces_set(g, far).has_value());
}

TEST_CASE("duality report is consistent on fixed games") {
  {
    forcing::DualityReport rep =
        forcing::forcing_dualities_check(pennies(), Halfspace{{1.0}, 0.0});
    CHECK(rep.consistent());
    CHECK_FALSE(rep.one_force);
    CHECK(rep.y_two_force_comp);
    CHECK(rep.violations.empty());
  }
  {
    forcing::DualityReport rep =
        forcing::forcing_dualities_check(simplex_base(), Halfspace{{1.0, 1.0}, 1.5});
    CHECK(rep.consistent());
    CHECK(rep.one_force);  // every payoff satisfies z1 + z2 <= 1 < 1.5
    CHECK_FALSE(rep.y_two_force_comp);
  }
  {
    geom::TargetSet L1(geom::Segment{{0.0, 0.0}, {1.0, 0.0}});
    forcing::DualityReport rep = forcing::forcing_dualities_check(simplex_base(), L1);
    CHECK(rep.consistent());
  }
}

TEST_CASE("duality sweep over random small pure games") {
  std::uint64_t s = 424242;
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + static_cast<int>(splitmix(s) % 3);
    const int n = 2 + static_cast<int>(splitmix(s) % 3);
    const int d = 1 + static_cast<int>(splitmix(s) % 2);
    std::vector<std::vector<Point>> F(m, std::vector<Point>(n, Point(d)));
    for (auto& row : F)
      for (auto& cell : row)
        for (double& v : cell) v = unit(s) * 2.0 - 1.0;
    PureGame g = PureGame::create(F);
    Point lambda(d);
    for (double& v : lambda) v = unit(s) * 2.0 - 1.0;
    if (geom::norm(lambda) < 1e-6) continue;
    lambda = geom::normalized(lambda);
    Halfspace H{lambda, unit(s) * 2.0 - 1.0};
    forcing::DualityReport rep = forcing::forcing_dualities_check(g, H);
    CHECK(rep.consistent());
  }
}
