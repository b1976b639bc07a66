#include "blackwell/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "blackwell/errors.hpp"

namespace blackwell::game {

PureGame PureGame::create(std::vector<std::vector<Point>> F, std::optional<double> gamma) {
  PureGame g;
  g.m = static_cast<int>(F.size());
  if (g.m == 0) throw ValidationError("game: no rows");
  g.n = static_cast<int>(F[0].size());
  if (g.n == 0) throw ValidationError("game: no columns");
  g.d = static_cast<int>(F[0][0].size());
  if (g.d == 0) throw ValidationError("game: zero payoff dimension");
  double maxnorm = 0.0;
  for (const auto& row : F) {
    if (static_cast<int>(row.size()) != g.n) throw ValidationError("game: ragged payoff tensor");
    for (const auto& p : row) {
      if (static_cast<int>(p.size()) != g.d) throw ValidationError("game: payoff dimension mismatch");
      maxnorm = std::max(maxnorm, geom::norm(p));
    }
  }
  g.gamma = gamma.value_or((1.0 + 1e-6) * std::max(maxnorm, 1e-12));
  if (maxnorm >= g.gamma)
    throw ValidationError("game: gamma must strictly dominate every payoff norm");
  g.F = std::move(F);
  return g;
}

Action Action::pure(int index) {
  Action a;
  a.rep_ = index;
  return a;
}

Action Action::mixed(std::vector<double> weights) {
  if (weights.empty()) throw ValidationError("action: empty mixture");
  double s = 0.0;
  for (double w : weights) {
    if (w < -1e-12) throw ValidationError("action: negative weight");
    s += w;
  }
  if (std::abs(s - 1.0) > 1e-9) throw ValidationError("action: weights must sum to 1");
  Action a;
  a.rep_ = std::move(weights);
  return a;
}

int Action::index() const {
  if (!is_pure()) throw KindMismatchError("action: mixed action has no pure index");
  return std::get<int>(rep_);
}

const std::vector<double>& Action::weights() const {
  if (is_pure()) throw KindMismatchError("action: pure action has no weights");
  return std::get<std::vector<double>>(rep_);
}

const PureGame& base(const Game& g) {
  if (const auto* p = std::get_if<PureGame>(&g)) return *p;
  return std::get<MixedGame>(g).base;
}

bool is_mixed(const Game& g) { return std::holds_alternative<MixedGame>(g); }

double gamma_of(const Game& g) { return base(g).gamma; }

namespace {

void check_index(int idx, int bound, const char* side) {
  if (idx < 0 || idx >= bound)
    throw IndexOutOfRangeError(std::string("payoff: ") + side + " index " + std::to_string(idx) +
                               " out of range [0," + std::to_string(bound) + ")");
}

std::vector<double> as_weights(const Action& a, int bound, const char* side) {
  if (a.is_pure()) {
    check_index(a.index(), bound, side);
    std::vector<double> w(bound, 0.0);
    w[a.index()] = 1.0;
    return w;
  }
  if (static_cast<int>(a.weights().size()) != bound)
    throw KindMismatchError(std::string("payoff: ") + side + " mixture length mismatch");
  return a.weights();
}

}  // namespace

Point payoff(const Game& g, const Action& x, const Action& y) {
  const PureGame& pg = base(g);
  if (!is_mixed(g)) {
    if (!x.is_pure() || !y.is_pure())
      throw KindMismatchError("payoff: pure game requires pure actions");
    check_index(x.index(), pg.m, "row");
    check_index(y.index(), pg.n, "column");
    return pg.F[x.index()][y.index()];
  }
  std::vector<double> mu = as_weights(x, pg.m, "row");
  std::vector<double> nu = as_weights(y, pg.n, "column");
  Point out(pg.d, 0.0);
  for (int i = 0; i < pg.m; ++i) {
    if (mu[i] == 0.0) continue;
    for (int j = 0; j < pg.n; ++j) {
      double w = mu[i] * nu[j];
      if (w == 0.0) continue;
      for (int k = 0; k < pg.d; ++k) out[k] += w * pg.F[i][j][k];
    }
  }
  return out;
}

std::vector<std::vector<double>> scalarize(const Game& g, const Point& lambda) {
  const PureGame& pg = base(g);
  if (static_cast<int>(lambda.size()) != pg.d)
    throw ValidationError("scalarize: lambda dimension mismatch");
  std::vector<std::vector<double>> G(pg.m, std::vector<double>(pg.n));
  for (int i = 0; i < pg.m; ++i)
    for (int j = 0; j < pg.n; ++j) G[i][j] = geom::dot(pg.F[i][j], lambda);
  return G;
}

double g_S(const Game& g, const Action& x, const Action& y, const Point& lambda,
           const geom::TargetSet& S) {
  return geom::dot(payoff(g, x, y), lambda) - geom::support_function(S, lambda);
}

double scalar_value(const Game& g, const Point& lambda) {
  auto G = scalarize(g, lambda);
  if (!is_mixed(g)) {
    double v = std::numeric_limits<double>::infinity();
    for (const auto& row : G) v = std::min(v, *std::max_element(row.begin(), row.end()));
    return v;
  }
  return lp::matrix_game(G).value;
}

lp::MatrixGameSolution scalar_solution(const Game& g, const Point& lambda) {
  return lp::matrix_game(scalarize(g, lambda));
}

double minimax_gap(const Game& g, const Point& lambda) {
  auto G = scalarize(g, lambda);
  const int m = static_cast<int>(G.size()), n = static_cast<int>(G[0].size());
  if (!is_mixed(g)) {
    double minmax = std::numeric_limits<double>::infinity();
    for (const auto& row : G) minmax = std::min(minmax, *std::max_element(row.begin(), row.end()));
    double maxmin = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      double colmin = G[0][j];
      for (int i = 1; i < m; ++i) colmin = std::min(colmin, G[i][j]);
      maxmin = std::max(maxmin, colmin);
    }
    return minmax - maxmin;
  }
  // Both optimization orders, each via its own LP: max-min equals the negated
  // min-max of the transposed negated matrix.
  double minmax = lp::matrix_game(G).value;
  std::vector<std::vector<double>> Gt(n, std::vector<double>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) Gt[j][i] = -G[i][j];
  double maxmin = -lp::matrix_game(Gt).value;
  return std::abs(minmax - maxmin);
}

Action fallback_action(const Game& g) {
  if (!is_mixed(g)) return Action::pure(0);
  const PureGame& pg = base(g);
  return Action::mixed(std::vector<double>(pg.m, 1.0 / pg.m));
}

Action fallback_opponent(const Game& g) {
  if (!is_mixed(g)) return Action::pure(0);
  const PureGame& pg = base(g);
  return Action::mixed(std::vector<double>(pg.n, 1.0 / pg.n));
}

std::vector<Point> payoff_vertices(const PureGame& g) {
  std::vector<Point> v;
  v.reserve(static_cast<size_t>(g.m) * g.n);
  for (const auto& row : g.F)
    for (const auto& p : row) v.push_back(p);
  return v;
}

}  // namespace blackwell::game
