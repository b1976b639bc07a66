#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "blackwell/geometry.hpp"
#include "blackwell/lp.hpp"

namespace blackwell::game {

using geom::Point;

// Finite pure-action vector-payoff game: F[i][j] in R^d, all |F[i][j]| < gamma.
struct PureGame {
  int m = 0, n = 0, d = 0;
  std::vector<std::vector<Point>> F;
  double gamma = 0.0;
  // gamma defaults to (1 + 1e-6) * max |F[i][j]|; any explicit gamma must
  // strictly dominate every payoff norm.
  static PureGame create(std::vector<std::vector<Point>> F, std::optional<double> gamma = {});
};

// Bilinear mixed extension over the action simplices.
struct MixedGame {
  PureGame base;
};

using Game = std::variant<PureGame, MixedGame>;

// Pure(index) or Mixed(weights over pure actions).
class Action {
 public:
  static Action pure(int index);
  static Action mixed(std::vector<double> weights);
  bool is_pure() const { return std::holds_alternative<int>(rep_); }
  int index() const;
  const std::vector<double>& weights() const;

 private:
  std::variant<int, std::vector<double>> rep_;
};

const PureGame& base(const Game& g);
bool is_mixed(const Game& g);
double gamma_of(const Game& g);

// Expected payoff tensor contraction. PureGame accepts pure actions only;
// MixedGame accepts both (a pure index acts as a point mass).
Point payoff(const Game& g, const Action& x, const Action& y);

// G[i][j] = <F[i][j], lambda>.
std::vector<std::vector<double>> scalarize(const Game& g, const Point& lambda);

// <payoff(x,y), lambda> - support_function(S, lambda).
double g_S(const Game& g, const Action& x, const Action& y, const Point& lambda,
           const geom::TargetSet& S);

// PureGame: min_i max_j - max_j min_i of the scalarized matrix (>= 0).
// MixedGame: |min-max LP value - max-min LP value| (<= 1e-7 by duality).
double minimax_gap(const Game& g, const Point& lambda);

// Scalarized game value with X minimizing: pure min_i max_j, mixed LP value.
double scalar_value(const Game& g, const Point& lambda);
// Full matrix-game solution of the scalarized game (mixed extension).
lp::MatrixGameSolution scalar_solution(const Game& g, const Point& lambda);

// Pure(0) for pure games, uniform mixture for mixed games.
Action fallback_action(const Game& g);
Action fallback_opponent(const Game& g);

// Flattened list of the m*n payoff vertices (hull generators).
std::vector<Point> payoff_vertices(const PureGame& g);

}  // namespace blackwell::game
