#include "blackwell/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blackwell/errors.hpp"

namespace blackwell::forcing {

namespace {

constexpr double kTol = 1e-9;

// max-min value (Y's guaranteed scalarized level) = -value of the transposed
// negated game with the roles swapped.
double maxmin_value(const std::vector<std::vector<double>>& G) {
  const int m = static_cast<int>(G.size()), n = static_cast<int>(G[0].size());
  std::vector<std::vector<double>> Gt(n, std::vector<double>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) Gt[j][i] = -G[i][j];
  return -lp::matrix_game(Gt).value;
}

std::string halfspace_desc(const Halfspace& H) {
  std::string s = "halfspace{<";
  for (size_t i = 0; i < H.normal.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(H.normal[i]);
  }
  s += ">,z <= " + std::to_string(H.offset) + "}";
  return s;
}

}  // namespace

std::optional<ForceCertificate> x_one_forces_halfspace(const Game& g, const Halfspace& H) {
  auto G = game::scalarize(g, H.normal);
  const int m = static_cast<int>(G.size()), n = static_cast<int>(G[0].size());
  ForceCertificate cert;
  cert.player = Player::X;
  cert.order = 1;
  cert.target = halfspace_desc(H);
  if (!game::is_mixed(g)) {
    for (int i = 0; i < m; ++i) {
      bool ok = true;
      for (int j = 0; j < n && ok; ++j)
        if (G[i][j] > H.offset + kTol) ok = false;
      if (ok) {
        cert.witness = Action::pure(i);
        return cert;
      }
    }
    return std::nullopt;
  }
  lp::MatrixGameSolution sol = lp::matrix_game(G);
  if (sol.value > H.offset + kTol) return std::nullopt;
  cert.witness = Action::mixed(sol.mu);
  return cert;
}

std::optional<ForceCertificate> x_two_forces_halfspace(const Game& g, const Halfspace& H) {
  auto G = game::scalarize(g, H.normal);
  const int m = static_cast<int>(G.size()), n = static_cast<int>(G[0].size());
  ForceCertificate cert;
  cert.player = Player::X;
  cert.order = 2;
  cert.target = halfspace_desc(H);
  if (!game::is_mixed(g)) {
    cert.response.reserve(n);
    for (int j = 0; j < n; ++j) {
      int best = -1;
      for (int i = 0; i < m; ++i)
        if (G[i][j] <= H.offset + kTol) { best = i; break; }
      if (best < 0) return std::nullopt;
      cert.response.push_back(Action::pure(best));
    }
    return cert;
  }
  if (maxmin_value(G) > H.offset + kTol) return std::nullopt;
  cert.responder = [g, H](const Action& y) {
    auto G2 = game::scalarize(g, H.normal);
    const auto& pg = game::base(g);
    std::vector<double> nu(pg.n, 0.0);
    if (y.is_pure()) nu[y.index()] = 1.0;
    else nu = y.weights();
    int best = 0;
    double bestv = std::numeric_limits<double>::infinity();
    for (int i = 0; i < pg.m; ++i) {
      double v = 0.0;
      for (int j = 0; j < pg.n; ++j) v += G2[i][j] * nu[j];
      if (v < bestv) { bestv = v; best = i; }
    }
    return Action::pure(best);
  };
  return cert;
}

std::optional<ForceCertificate> y_two_forces_complement(const Game& g, const Halfspace& H) {
  auto G = game::scalarize(g, H.normal);
  const int m = static_cast<int>(G.size());
  ForceCertificate cert;
  cert.player = Player::Y;
  cert.order = 2;
  cert.target = "complement of " + halfspace_desc(H);
  if (!game::is_mixed(g)) {
    // Succeeds iff every row's best column escapes H, i.e. min_i max_j > c.
    double minmax = std::numeric_limits<double>::infinity();
    cert.response.reserve(m);
    for (int i = 0; i < m; ++i) {
      int arg = static_cast<int>(std::max_element(G[i].begin(), G[i].end()) - G[i].begin());
      minmax = std::min(minmax, G[i][arg]);
      cert.response.push_back(Action::pure(arg));
    }
    if (minmax <= H.offset + kTol) return std::nullopt;
    return cert;
  }
  if (lp::matrix_game(G).value <= H.offset + kTol) return std::nullopt;
  cert.responder = [g, H](const Action& x) {
    auto G2 = game::scalarize(g, H.normal);
    const auto& pg = game::base(g);
    std::vector<double> mu(pg.m, 0.0);
    if (x.is_pure()) mu[x.index()] = 1.0;
    else mu = x.weights();
    int best = 0;
    double bestv = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < pg.n; ++j) {
      double v = 0.0;
      for (int i = 0; i < pg.m; ++i) v += G2[i][j] * mu[i];
      if (v > bestv) { bestv = v; best = j; }
    }
    return Action::pure(best);
  };
  return cert;
}

std::optional<ForceCertificate> y_one_forces_complement(const Game& g, const Halfspace& H) {
  auto G = game::scalarize(g, H.normal);
  const int m = static_cast<int>(G.size()), n = static_cast<int>(G[0].size());
  ForceCertificate cert;
  cert.player = Player::Y;
  cert.order = 1;
  cert.target = "complement of " + halfspace_desc(H);
  if (!game::is_mixed(g)) {
    double best = -std::numeric_limits<double>::infinity();
    int arg = -1;
    for (int j = 0; j < n; ++j) {
      double colmin = G[0][j];
      for (int i = 1; i < m; ++i) colmin = std::min(colmin, G[i][j]);
      if (colmin > best) { best = colmin; arg = j; }
    }
    if (best <= H.offset + kTol) return std::nullopt;
    cert.witness = Action::pure(arg);
    return cert;
  }
  // Mixed: max-min equals min-max; the optimal nu* guarantees the level.
  lp::MatrixGameSolution sol = lp::matrix_game(G);
  if (sol.value <= H.offset + kTol) return std::nullopt;
  cert.witness = Action::mixed(sol.nu);
  return cert;
}

std::optional<ForceCertificate> x_two_forces_set(const PureGame& g, const geom::TargetSet& S) {
  const double tol = std::max(S.resolution(), 1e-9);
  ForceCertificate cert;
  cert.player = Player::X;
  cert.order = 2;
  cert.target = S.describe();
  cert.response.reserve(g.n);
  for (int j = 0; j < g.n; ++j) {
    int best = -1;
    for (int i = 0; i < g.m; ++i) {
      if (geom::project(g.F[i][j], S).distance <= tol) { best = i; break; }
    }
    if (best < 0) return std::nullopt;
    cert.response.push_back(Action::pure(best));
  }
  return cert;
}

namespace {

// All four section-level quantifier statements over one membership table.
DualityReport check_with_membership(const PureGame& g,
                                    const std::function<bool(int, int, double)>& member) {
  DualityReport rep;
  const int m = g.m, n = g.n;
  auto one_force = [&](double enlarge) {
    for (int i = 0; i < m; ++i) {
      bool all = true;
      for (int j = 0; j < n && all; ++j)
        if (!member(i, j, enlarge)) all = false;
      if (all) return true;
    }
    return false;
  };
  auto two_force_x = [&]() {
    for (int j = 0; j < n; ++j) {
      bool any = false;
      for (int i = 0; i < m && !any; ++i)
        if (member(i, j, 0.0)) any = true;
      if (!any) return false;
    }
    return true;
  };
  auto y_two_force_comp = [&]() {
    for (int i = 0; i < m; ++i) {
      bool any = false;
      for (int j = 0; j < n && !any; ++j)
        if (!member(i, j, 0.0)) any = true;
      if (!any) return false;
    }
    return true;
  };

  rep.one_force = one_force(0.0);
  rep.y_two_force_comp = y_two_force_comp();

  rep.bullet1 = (rep.one_force == !rep.y_two_force_comp);
  if (!rep.bullet1) rep.violations.push_back("bullet1: 1-force vs complement 2-force mismatch");

  rep.bullet2 = true;
  if (rep.one_force) {
    for (double eps : {0.1, 0.5, 1.0}) {
      if (!one_force(eps)) {
        rep.bullet2 = false;
        rep.violations.push_back("bullet2: superset enlargement lost 1-forcibility");
        break;
      }
    }
  }

  // bullet3: 1-force iff the target meets every minimal Y-2-forcible set
  // {F[i][r(i)]} over all response maps r.
  double maps = std::pow(static_cast<double>(n), m);
  if (maps > 1e6) throw ValidationError("forcing_dualities_check: response map enumeration too large");
  bool meets_all = true;
  std::vector<int> r(m, 0);
  while (true) {
    bool hit = false;
    for (int i = 0; i < m && !hit; ++i)
      if (member(i, r[i], 0.0)) hit = true;
    if (!hit) { meets_all = false; break; }
    int pos = m - 1;
    while (pos >= 0 && r[pos] == n - 1) r[pos--] = 0;
    if (pos < 0) break;
    ++r[pos];
  }
  rep.bullet3 = (rep.one_force == meets_all);
  if (!rep.bullet3) rep.violations.push_back("bullet3: minimal 2-forcible intersection mismatch");

  rep.bullet4 = !rep.one_force || two_force_x();
  if (!rep.bullet4) rep.violations.push_back("bullet4: 1-force did not imply 2-force");
  return rep;
}

}  // namespace

DualityReport forcing_dualities_check(const PureGame& g, const geom::TargetSet& S) {
  const double tol = std::max(S.resolution(), 1e-9);
  return check_with_membership(g, [&](int i, int j, double enlarge) {
    return geom::project(g.F[i][j], S).distance <= tol + enlarge;
  });
}

DualityReport forcing_dualities_check(const PureGame& g, const Halfspace& H) {
  const double nl = geom::norm(H.normal);
  return check_with_membership(g, [&](int i, int j, double enlarge) {
    return geom::dot(H.normal, g.F[i][j]) <= H.offset + enlarge * nl + kTol;
  });
}

}  // namespace blackwell::forcing
