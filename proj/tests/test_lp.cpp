#include <cmath>
#include <vector>

#include "blackwell/errors.hpp"
#include "blackwell/lp.hpp"
#include "doctest.h"

using namespace blackwell;
using lp::Direction;
using lp::LinearProgram;
using lp::LPStatus;
using lp::Sense;

TEST_CASE("solve_lp: box maximum") {
  LinearProgram p;
  p.direction = Direction::Maximize;
  p.objective = {1.0, 1.0};
  p.A = {{1.0, 0.0}, {0.0, 1.0}};
  p.rhs = {1.0, 2.0};
  p.senses = {Sense::LessEq, Sense::LessEq};
  auto r = lp::solve_lp(p);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(2.0));
}

TEST_CASE("solve_lp: equality and minimization") {
  LinearProgram p;
  p.direction = Direction::Minimize;
  p.objective = {2.0, 1.0};
  p.A = {{1.0, 1.0}};
  p.rhs = {1.0};
  p.senses = {Sense::Eq};
  auto r = lp::solve_lp(p);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(1.0));
}

TEST_CASE("solve_lp: GreaterEq and free variables") {
  LinearProgram p;
  p.direction = Direction::Minimize;
  p.objective = {1.0};
  p.A = {{1.0}};
  p.rhs = {-5.0};
  p.senses = {Sense::GreaterEq};
  p.free_vars = {true};
  auto r = lp::solve_lp(p);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == doctest::Approx(-5.0));
}

TEST_CASE("solve_lp: infeasible and unbounded statuses") {
  LinearProgram inf;
  inf.direction = Direction::Maximize;
  inf.objective = {1.0};
  inf.A = {{1.0}};
  inf.rhs = {-1.0};
  inf.senses = {Sense::LessEq};  // x >= 0 and x <= -1
  CHECK(lp::solve_lp(inf).status == LPStatus::Infeasible);

  LinearProgram unb;
  unb.direction = Direction::Maximize;
  unb.objective = {1.0};
  unb.A = {{-1.0}};
  unb.rhs = {1.0};
  unb.senses = {Sense::LessEq};  // -x <= 1 leaves x unbounded above
  CHECK(lp::solve_lp(unb).status == LPStatus::Unbounded);
}

TEST_CASE("matrix game: closed forms, x minimizes") {
  // Saddle point: [[1,3],[2,4]] has value 3 at (row 0, col 1).
  auto saddle = lp::matrix_game({{1.0, 3.0}, {2.0, 4.0}});
  CHECK(saddle.value == doctest::Approx(3.0).epsilon(1e-9));

  // Fully mixed 2x2: [[0,2],[3,1]] -> value 1.5, mu=(1/2,1/2), nu=(1/4,3/4).
  auto mixed = lp::matrix_game({{0.0, 2.0}, {3.0, 1.0}});
  CHECK(mixed.value == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(mixed.mu[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(mixed.nu[0] == doctest::Approx(0.25).epsilon(1e-9));

  // Matching pennies: value 0, uniform strategies.
  auto pennies = lp::matrix_game({{1.0, -1.0}, {-1.0, 1.0}});
  CHECK(pennies.value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(pennies.mu[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(pennies.nu[0] == doctest::Approx(0.5).epsilon(1e-9));

  // Single row / single column.
  CHECK(lp::matrix_game({{3.0, 1.0, 2.0}}).value == doctest::Approx(3.0));
  CHECK(lp::matrix_game({{2.0}, {5.0}}).value == doctest::Approx(2.0));
  CHECK(lp::matrix_game({{7.0}}).value == doctest::Approx(7.0));
}

TEST_CASE("matrix game: LP path on 3x3 and strategy validity") {
  std::vector<std::vector<double>> G{{4.0, -2.0, 1.0}, {-1.0, 3.0, 0.0}, {2.0, 0.0, -3.0}};
  auto sol = lp::matrix_game(G);
  double sum_mu = 0.0, sum_nu = 0.0;
  for (double w : sol.mu) {
    CHECK(w >= -1e-12);
    sum_mu += w;
  }
  for (double w : sol.nu) {
    CHECK(w >= -1e-12);
    sum_nu += w;
  }
  CHECK(sum_mu == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sum_nu == doctest::Approx(1.0).epsilon(1e-9));
  // mu guarantees the value against every column; nu against every row.
  for (size_t j = 0; j < G[0].size(); ++j) {
    double col = 0.0;
    for (size_t i = 0; i < G.size(); ++i) col += sol.mu[i] * G[i][j];
    CHECK(col <= sol.value + 1e-7);
  }
  for (size_t i = 0; i < G.size(); ++i) {
    double row = 0.0;
    for (size_t j = 0; j < G[i].size(); ++j) row += sol.nu[j] * G[i][j];
    CHECK(row >= sol.value - 1e-7);
  }
}

TEST_CASE("matrix game: constant matrix") {
  auto sol = lp::matrix_game({{2.5, 2.5}, {2.5, 2.5}});
  CHECK(sol.value == doctest::Approx(2.5));
}

TEST_CASE("lp validation errors") {
  LinearProgram p;
  p.direction = Direction::Maximize;
  p.objective = {1.0, 1.0};
  p.A = {{1.0}};  // row width mismatch
  p.rhs = {1.0};
  p.senses = {Sense::LessEq};
  CHECK_THROWS_AS(lp::solve_lp(p), ValidationError);
  CHECK_THROWS_AS(lp::matrix_game({}), ValidationError);
}
