#include "blackwell/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "blackwell/errors.hpp"

namespace blackwell::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr long long kPivotBudget = 1'000'000;

struct Tableau {
  // rows: m x (ncols + 1), last column is rhs. basis[i] = column basic in row i.
  std::vector<std::vector<double>> rows;
  std::vector<int> basis;
  int ncols = 0;
  long long pivots = 0;

  void pivot(int r, int c) {
    if (++pivots > kPivotBudget)
      throw CycleLimitError("simplex: pivot budget exhausted");
    auto& prow = rows[r];
    double p = prow[c];
    for (double& v : prow) v /= p;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      double f = rows[i][c];
      if (f == 0.0) continue;
      for (int j = 0; j <= ncols; ++j) rows[i][j] -= f * prow[j];
    }
    basis[r] = c;
  }

  // Bland's rule: lowest eligible entering index; leaving by min ratio with
  // lowest basis index tie-break. Returns false when optimal, throws on
  // unbounded via the out-flag.
  bool step(const std::vector<double>& cost, const std::vector<bool>& usable, bool& unbounded) {
    const int m = static_cast<int>(rows.size());
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (!usable[j]) continue;
      double rc = cost[j];
      for (int i = 0; i < m; ++i) rc -= cost[basis[i]] * rows[i][j];
      if (rc < -kPivotTol) { enter = j; break; }
    }
    if (enter < 0) { unbounded = false; return false; }
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      double a = rows[i][enter];
      if (a > kPivotTol) {
        double ratio = rows[i][ncols] / a;
        if (ratio < best - 1e-15 || (ratio <= best + 1e-15 && (leave < 0 || basis[i] < basis[leave]))) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) { unbounded = true; return false; }
    pivot(leave, enter);
    unbounded = false;
    return true;
  }
};

}  // namespace

LPResult solve_lp(const LinearProgram& prog) {
  const int n = static_cast<int>(prog.objective.size());
  const int m = static_cast<int>(prog.A.size());
  if (n == 0) throw ValidationError("solve_lp: no variables");
  if (static_cast<int>(prog.rhs.size()) != m || static_cast<int>(prog.senses.size()) != m)
    throw ValidationError("solve_lp: constraint shape mismatch");
  for (const auto& row : prog.A)
    if (static_cast<int>(row.size()) != n) throw ValidationError("solve_lp: row width mismatch");
  if (!prog.free_vars.empty() && static_cast<int>(prog.free_vars.size()) != n)
    throw ValidationError("solve_lp: free_vars size mismatch");

  // Column layout: split(x) | slack/surplus | artificial.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int nc = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[j] = nc++;
    if (!prog.free_vars.empty() && prog.free_vars[j]) neg_col[j] = nc++;
  }
  const int split_end = nc;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  std::vector<double> sign(m, 1.0);
  for (int i = 0; i < m; ++i) {
    Sense s = prog.senses[i];
    if (prog.rhs[i] < 0.0) {
      sign[i] = -1.0;
      if (s == Sense::LessEq) s = Sense::GreaterEq;
      else if (s == Sense::GreaterEq) s = Sense::LessEq;
    }
    if (s == Sense::LessEq) slack_col[i] = nc++;
    else if (s == Sense::GreaterEq) { slack_col[i] = nc++; art_col[i] = nc++; }
    else art_col[i] = nc++;
    // record back the normalized sense via slack coefficient below
    if (s == Sense::GreaterEq) slack_col[i] = ~slack_col[i];  // mark surplus with bit-flip
  }

  Tableau T;
  T.ncols = nc;
  T.rows.assign(m, std::vector<double>(nc + 1, 0.0));
  T.basis.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    auto& row = T.rows[i];
    for (int j = 0; j < n; ++j) {
      double a = sign[i] * prog.A[i][j];
      row[pos_col[j]] = a;
      if (neg_col[j] >= 0) row[neg_col[j]] = -a;
    }
    row[nc] = sign[i] * prog.rhs[i];
    int sc = slack_col[i];
    if (sc != -1) {
      if (sc < 0) { sc = ~sc; row[sc] = -1.0; }  // surplus
      else row[sc] = 1.0;                        // slack
      slack_col[i] = sc;
    }
    if (art_col[i] >= 0) { row[art_col[i]] = 1.0; T.basis[i] = art_col[i]; }
    else T.basis[i] = slack_col[i];
  }

  std::vector<bool> usable(nc, true);
  std::vector<bool> is_art(nc, false);
  bool any_art = false;
  for (int i = 0; i < m; ++i)
    if (art_col[i] >= 0) { is_art[art_col[i]] = true; any_art = true; }

  // Phase 1: minimize the artificial total.
  if (any_art) {
    std::vector<double> cost1(nc, 0.0);
    for (int j = 0; j < nc; ++j)
      if (is_art[j]) cost1[j] = 1.0;
    bool unbounded = false;
    while (T.step(cost1, usable, unbounded)) {}
    double art_total = 0.0;
    for (size_t i = 0; i < T.rows.size(); ++i)
      if (is_art[T.basis[i]]) art_total += T.rows[i][T.ncols];
    if (art_total > 1e-7) return {LPStatus::Infeasible, {}, 0.0};
    // Drive artificials out of the basis; drop redundant rows.
    for (int i = static_cast<int>(T.rows.size()) - 1; i >= 0; --i) {
      if (!is_art[T.basis[i]]) continue;
      int piv = -1;
      for (int j = 0; j < nc; ++j) {
        if (is_art[j]) continue;
        if (std::abs(T.rows[i][j]) > kPivotTol) { piv = j; break; }
      }
      if (piv >= 0) T.pivot(i, piv);
      else {
        T.rows.erase(T.rows.begin() + i);
        T.basis.erase(T.basis.begin() + i);
      }
    }
    for (int j = 0; j < nc; ++j)
      if (is_art[j]) usable[j] = false;
  }

  // Phase 2 over the original objective.
  std::vector<double> cost2(nc, 0.0);
  const double dsign = prog.direction == Direction::Minimize ? 1.0 : -1.0;
  for (int j = 0; j < n; ++j) {
    cost2[pos_col[j]] = dsign * prog.objective[j];
    if (neg_col[j] >= 0) cost2[neg_col[j]] = -dsign * prog.objective[j];
  }
  bool unbounded = false;
  while (T.step(cost2, usable, unbounded)) {}
  if (unbounded) return {LPStatus::Unbounded, {}, 0.0};

  std::vector<double> raw(split_end, 0.0);
  for (size_t i = 0; i < T.rows.size(); ++i)
    if (T.basis[i] < split_end) raw[T.basis[i]] = T.rows[i][T.ncols];
  LPResult res;
  res.status = LPStatus::Optimal;
  res.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    res.x[j] = raw[pos_col[j]];
    if (neg_col[j] >= 0) res.x[j] -= raw[neg_col[j]];
  }
  res.value = 0.0;
  for (int j = 0; j < n; ++j) res.value += prog.objective[j] * res.x[j];
  return res;
}

// ---- Matrix games -----------------------------------------------------------

namespace {

MatrixGameSolution game_1xn(const std::vector<std::vector<double>>& G) {
  const auto& row = G[0];
  int j = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
  MatrixGameSolution s;
  s.value = row[j];
  s.mu = {1.0};
  s.nu.assign(row.size(), 0.0);
  s.nu[j] = 1.0;
  return s;
}

MatrixGameSolution game_mx1(const std::vector<std::vector<double>>& G) {
  int best = 0;
  for (size_t i = 1; i < G.size(); ++i)
    if (G[i][0] < G[best][0]) best = static_cast<int>(i);
  MatrixGameSolution s;
  s.value = G[best][0];
  s.mu.assign(G.size(), 0.0);
  s.mu[best] = 1.0;
  s.nu = {1.0};
  return s;
}

// Pure saddle: entry maximal in its row (column player cannot improve) and
// minimal in its column (row player cannot improve).
bool find_saddle(const std::vector<std::vector<double>>& G, int& si, int& sj) {
  const int m = static_cast<int>(G.size()), n = static_cast<int>(G[0].size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      bool ok = true;
      for (int jj = 0; jj < n && ok; ++jj)
        if (G[i][jj] > G[i][j]) ok = false;
      for (int ii = 0; ii < m && ok; ++ii)
        if (G[ii][j] < G[i][j]) ok = false;
      if (ok) { si = i; sj = j; return true; }
    }
  return false;
}

bool game_2x2(const std::vector<std::vector<double>>& G, MatrixGameSolution& s) {
  int si = 0, sj = 0;
  if (find_saddle(G, si, sj)) {
    s.value = G[si][sj];
    s.mu = {si == 0 ? 1.0 : 0.0, si == 1 ? 1.0 : 0.0};
    s.nu = {sj == 0 ? 1.0 : 0.0, sj == 1 ? 1.0 : 0.0};
    return true;
  }
  const double a = G[0][0], b = G[0][1], c = G[1][0], d = G[1][1];
  const double D = a - b - c + d;
  if (std::abs(D) < 1e-12) return false;  // degenerate without saddle: defer to LP
  double p = (d - c) / D;  // weight on row 0
  double q = (d - b) / D;  // weight on column 0
  if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0) return false;
  s.value = (a * d - b * c) / D;
  s.mu = {p, 1.0 - p};
  s.nu = {q, 1.0 - q};
  return true;
}

}  // namespace

MatrixGameSolution matrix_game(const std::vector<std::vector<double>>& G) {
  const int m = static_cast<int>(G.size());
  if (m == 0) throw ValidationError("matrix_game: empty matrix");
  const int n = static_cast<int>(G[0].size());
  if (n == 0) throw ValidationError("matrix_game: empty row");
  for (const auto& row : G)
    if (static_cast<int>(row.size()) != n) throw ValidationError("matrix_game: ragged matrix");

  if (m == 1) return game_1xn(G);
  if (n == 1) return game_mx1(G);
  if (m == 2 && n == 2) {
    MatrixGameSolution s;
    if (game_2x2(G, s)) return s;
  }

  // Value shift keeps the game strictly positive so both LPs normalize.
  double lo = G[0][0];
  for (const auto& row : G)
    for (double v : row) lo = std::min(lo, v);
  const double t = 1.0 + std::max(0.0, -lo);

  // Column player: min 1'q  s.t.  G'q >= 1, q >= 0.
  LinearProgram qp;
  qp.direction = Direction::Minimize;
  qp.objective.assign(n, 1.0);
  qp.A.assign(m, std::vector<double>(n));
  qp.rhs.assign(m, 1.0);
  qp.senses.assign(m, Sense::GreaterEq);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) qp.A[i][j] = G[i][j] + t;
  LPResult qres = solve_lp(qp);
  if (qres.status != LPStatus::Optimal || qres.value <= 0.0)
    throw CycleLimitError("matrix_game: column LP failed");

  // Row player: max 1'p  s.t.  G'^T p <= 1, p >= 0.
  LinearProgram pp;
  pp.direction = Direction::Maximize;
  pp.objective.assign(m, 1.0);
  pp.A.assign(n, std::vector<double>(m));
  pp.rhs.assign(n, 1.0);
  pp.senses.assign(n, Sense::LessEq);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) pp.A[j][i] = G[i][j] + t;
  LPResult pres = solve_lp(pp);
  if (pres.status != LPStatus::Optimal || pres.value <= 0.0)
    throw CycleLimitError("matrix_game: row LP failed");

  const double vq = 1.0 / qres.value, vp = 1.0 / pres.value;
  MatrixGameSolution s;
  s.value = 0.5 * (vp + vq) - t;
  s.mu.assign(m, 0.0);
  s.nu.assign(n, 0.0);
  double psum = 0.0, qsum = 0.0;
  for (int i = 0; i < m; ++i) psum += std::max(0.0, pres.x[i]);
  for (int j = 0; j < n; ++j) qsum += std::max(0.0, qres.x[j]);
  for (int i = 0; i < m; ++i) s.mu[i] = std::max(0.0, pres.x[i]) / psum;
  for (int j = 0; j < n; ++j) s.nu[j] = std::max(0.0, qres.x[j]) / qsum;
  return s;
}

}  // namespace blackwell::lp
