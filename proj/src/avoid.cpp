#include "blackwell/avoid.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

namespace blackwell::avoid {

double epsilon_of_tau(double tau, double gamma) {
  if (!(tau > 0.0)) throw NonPositiveInputError("epsilon_of_tau: tau must be positive");
  if (!(gamma > 0.0)) throw NonPositiveInputError("epsilon_of_tau: gamma must be positive");
  const double t2 = tau * tau;
  return t2 * (std::sqrt(gamma * gamma + t2) - gamma) / (8.0 * (4.0 * gamma * gamma + t2));
}

namespace {

constexpr int kRadiusSteps = 20;

// Lazily evaluated scalarized values, one per grid direction.
struct ValueCache {
  const Game* g;
  std::vector<double> value;
  std::vector<char> ready;
  explicit ValueCache(const Game& game, size_t n) : g(&game), value(n, 0.0), ready(n, 0) {}
  double at(const geom::DirectionGrid& grid, size_t k) {
    if (!ready[k]) {
      value[k] = game::scalar_value(*g, grid.dirs[k]);
      ready[k] = 1;
    }
    return value[k];
  }
};

// First-lambda certificate anchored at psi, or none. Exactness rule: psi must
// be a genuine nearest point, so project(phi, S).distance >= r - 1e-7.
std::optional<Counterexample> scan_psi(const Game& g, const geom::TargetSet& S,
                                       const Point& psi, double tau,
                                       const geom::DirectionGrid& grid, ValueCache& cache,
                                       const std::vector<Point>& hull_vertices) {
  double r_max = 0.0;
  for (const Point& v : hull_vertices) r_max = std::max(r_max, geom::dist(v, psi));
  const double r_min = tau * (1.0 + 1e-5);
  if (r_max < r_min) return std::nullopt;
  for (size_t k = 0; k < grid.dirs.size(); ++k) {
    const Point& lambda = grid.dirs[k];
    const double v = cache.at(grid, k);
    const double margin = v - geom::dot(lambda, psi);
    if (margin <= tau + 1e-9) continue;
    for (int step = 0; step <= kRadiusSteps; ++step) {
      const double r = r_min + (r_max - r_min) * (1.0 - static_cast<double>(step) / kRadiusSteps);
      Point phi = geom::add(psi, geom::scale(lambda, r));
      if (!geom::in_convex_hull(phi, hull_vertices)) continue;
      if (geom::project(phi, S).distance < r - 1e-7) continue;
      const double stored = std::min(margin - 1.5e-9, (tau + r * (1.0 - 1e-6)) / 2.0);
      Counterexample ce;
      ce.phi = std::move(phi);
      ce.psi = psi;
      ce.H = Halfspace{lambda, geom::dot(lambda, psi) + stored};
      ce.tau = stored;
      ce.value = v;
      if (game::is_mixed(g)) {
        lp::MatrixGameSolution sol = game::scalar_solution(g, lambda);
        ce.y_witness = Action::mixed(sol.nu);
      }
      return ce;
    }
  }
  return std::nullopt;
}

const std::vector<Point>& cloud_points(const geom::TargetSet& S, geom::PointCloud& scratch) {
  if (const auto* cloud = std::get_if<geom::PointCloud>(&S.rep())) return cloud->points;
  scratch = geom::sample_cloud(S, 0.01);
  return scratch.points;
}

// 1-forcing y for the drive when one exists: a nu with guaranteed scalarized
// level above the certificate offset.
std::optional<Action> one_forcing_y(const Game& g, const Counterexample& ce,
                                    const std::vector<std::vector<double>>& G) {
  if (game::is_mixed(g)) {
    if (ce.y_witness) return ce.y_witness;
    lp::MatrixGameSolution sol = lp::matrix_game(G);
    if (sol.value > ce.H.offset + 1e-12) return Action::mixed(sol.nu);
    return std::nullopt;
  }
  const int m = static_cast<int>(G.size()), n = static_cast<int>(G[0].size());
  int best = -1;
  double bestv = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double colmin = G[0][j];
    for (int i = 1; i < m; ++i) colmin = std::min(colmin, G[i][j]);
    if (colmin > bestv) {
      bestv = colmin;
      best = j;
    }
  }
  if (bestv > ce.H.offset + 1e-9) return Action::pure(best);
  return std::nullopt;
}

// Column best response pushing the scalarized payoff above the offset.
Action two_forcing_response(const Game& g, const std::vector<std::vector<double>>& G,
                            const Action& x) {
  const auto& pg = game::base(g);
  std::vector<double> mu(static_cast<size_t>(pg.m), 0.0);
  if (x.is_pure())
    mu[static_cast<size_t>(x.index())] = 1.0;
  else
    mu = x.weights();
  int best = 0;
  double bestv = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < pg.n; ++j) {
    double s = 0.0;
    for (int i = 0; i < pg.m; ++i) s += mu[static_cast<size_t>(i)] * G[i][j];
    if (s > bestv) {
      bestv = s;
      best = j;
    }
  }
  return Action::pure(best);
}

}  // namespace

std::optional<Counterexample> find_counterexample(const Game& g, const geom::TargetSet& S,
                                                  double tau,
                                                  const geom::DirectionGrid& directions) {
  if (!(tau > 0.0)) throw NonPositiveInputError("find_counterexample: tau must be positive");
  geom::PointCloud scratch;
  const auto& pts = cloud_points(S, scratch);
  auto V = game::payoff_vertices(game::base(g));
  ValueCache cache(g, directions.dirs.size());
  for (const Point& psi : pts) {
    auto ce = scan_psi(g, S, psi, tau, directions, cache, V);
    if (ce) return ce;
  }
  return std::nullopt;
}

std::pair<geom::PointCloud, std::vector<Counterexample>> shrink(
    const Game& g, const geom::PointCloud& S, double tau,
    const geom::DirectionGrid& directions) {
  if (!(tau > 0.0)) throw NonPositiveInputError("shrink: tau must be positive");
  geom::TargetSet set(S);
  auto V = game::payoff_vertices(game::base(g));
  ValueCache cache(g, directions.dirs.size());
  std::vector<Counterexample> certs;
  for (const Point& psi : S.points) {
    auto ce = scan_psi(g, set, psi, tau, directions, cache, V);
    if (ce) certs.push_back(std::move(*ce));
  }
  const double eps = epsilon_of_tau(tau, game::gamma_of(g));
  geom::PointCloud out;
  out.h = S.h;
  for (const Point& p : S.points) {
    bool removed = false;
    for (const Counterexample& ce : certs) {
      if (geom::dist(p, ce.psi) < eps) {
        removed = true;
        break;
      }
    }
    if (!removed) out.points.push_back(p);
  }
  return {std::move(out), std::move(certs)};
}

StageBudgetExceeded::StageBudgetExceeded(const std::string& what, OnionDecomposition partial)
    : Error(what),
      partial_(std::make_shared<const OnionDecomposition>(std::move(partial))) {}

OnionDecomposition peel(const Game& g, const geom::TargetSet& S, const PeelOptions& opts) {
  if (opts.stage_budget < 1) throw ValidationError("peel: stage budget must be at least 1");
  const auto& pg = game::base(g);
  auto V = game::payoff_vertices(pg);
  auto grid = geom::make_direction_grid(pg.d, V, opts.grid_count);
  const double gamma = game::gamma_of(g);
  const double tau_min = 1.0 / (opts.stage_budget + 1);

  OnionDecomposition dec;
  geom::TargetSet cur = S;
  bool clouded = std::holds_alternative<geom::PointCloud>(S.rep());
  int no_removal = 0;

  for (int i = 0; i < opts.stage_budget; ++i) {
    const double tau = 1.0 / (i + 1);
    geom::PointCloud scratch;
    const auto& pts = cloud_points(cur, scratch);
    ValueCache cache(g, grid.dirs.size());
    std::vector<Counterexample> certs;
    for (const Point& psi : pts) {
      auto ce = scan_psi(g, cur, psi, tau, grid, cache, V);
      if (ce) certs.push_back(std::move(*ce));
    }
    dec.stages.push_back(Stage{cur, tau, certs});

    if (certs.empty()) {
      if (++no_removal >= 2 && !find_counterexample(g, cur, tau_min, grid)) {
        dec.kind = OnionKind::ASetApprox;
        dec.residual_tau = tau_min;
        dec.delta = 0.0;
        dec.horizon = std::numeric_limits<long long>::max();
        return dec;
      }
      continue;
    }
    no_removal = 0;

    geom::PointCloud cloud =
        clouded ? std::get<geom::PointCloud>(cur.rep()) : geom::sample_cloud(cur, opts.cloud_h);
    const double eps = epsilon_of_tau(tau, gamma);
    geom::PointCloud next;
    next.h = cloud.h;
    for (const Point& p : cloud.points) {
      bool removed = false;
      for (const Counterexample& ce : certs) {
        if (geom::dist(p, ce.psi) < eps) {
          removed = true;
          break;
        }
      }
      if (!removed) next.points.push_back(p);
    }
    if (next.points.empty()) {
      dec.kind = OnionKind::Empty;
      dec.N = i + 1;
      dec.delta = epsilon_of_tau(1.0 / dec.N, gamma);
      dec.horizon = static_cast<long long>(std::ceil(8.0 / dec.delta));
      return dec;
    }
    cur = geom::TargetSet(std::move(next));
    clouded = true;
  }

  if (!find_counterexample(g, cur, tau_min, grid)) {
    dec.kind = OnionKind::ASetApprox;
    dec.residual_tau = tau_min;
    dec.delta = 0.0;
    dec.horizon = std::numeric_limits<long long>::max();
    return dec;
  }
  throw StageBudgetExceeded("peel: stage budget exhausted with counterexamples remaining",
                            std::move(dec));
}

int rind_index(const OnionDecomposition& dec, const Point& phi) {
  if (dec.kind == OnionKind::ASetApprox || !(dec.delta > 0.0)) return approach::kRindInfinity;
  for (int i = static_cast<int>(dec.stages.size()) - 1; i >= 0; --i) {
    if (geom::project(phi, dec.stages[static_cast<size_t>(i)].set).distance <=
        dec.delta + 1e-12)
      return i;
  }
  return -1;
}

DriveResult antiforce_drive(const Game& g, const Counterexample& ce, const Point& p,
                            long long T, const XStream& xs) {
  const double gamma = game::gamma_of(g);
  const double eps = epsilon_of_tau(ce.tau, gamma);
  if (geom::dist(p, ce.psi) > 2.0 * eps + 1e-12)
    throw ValidationError("antiforce_drive: p must lie in B(psi, 2 eps(tau))");
  if (T < static_cast<long long>(std::ceil(8.0 / eps)))
    throw ValidationError("antiforce_drive: T below 8/eps(tau)");
  const double r = geom::dist(ce.phi, ce.psi);
  const auto cap = static_cast<long long>(std::ceil(static_cast<double>(T) * gamma * eps / 8.0));

  auto G = game::scalarize(g, ce.H.normal);
  std::optional<Action> ybar = one_forcing_y(g, ce, G);

  DriveResult res;
  Point sum(p.size(), 0.0);
  for (long long i = 1; i <= cap; ++i) {
    Action x = xs(i);
    Action y = ybar ? *ybar : two_forcing_response(g, G, x);
    Point z = game::payoff(g, x, y);
    sum = geom::add(sum, z);
    Point q = geom::scale(geom::add(geom::scale(p, static_cast<double>(T)), sum),
                          1.0 / static_cast<double>(T + i));
    res.ys.push_back(y);
    res.partial_means.push_back(q);
    if (geom::dist(ce.phi, q) <= r - eps + 1e-12) {
      res.M = i;
      return res;
    }
  }
  throw DriveOverrunError("antiforce_drive: no eps decrease within ceil(T gamma eps / 8) rounds");
}

HStar::HStar(Game g, OnionDecomposition dec)
    : g_(std::move(g)),
      dec_(std::make_shared<const OnionDecomposition>(std::move(dec))),
      gamma_(game::gamma_of(g_)),
      horizon_(dec_->horizon) {
  if (dec_->kind != OnionKind::Empty)
    throw KindMismatchError("HStar: requires an Empty decomposition (finite T(S))");
}

void HStar::start_drive(const Point& phi, int index_now, int index_prev) {
  if (index_now < 0) {
    // Already escaped past the outermost rind; nothing to force.
    drive_.reset();
    return;
  }
  const double rho_bound = 2.0 * epsilon_of_tau(1.0 / (index_now + 1), gamma_);
  const double slack_bound = index_prev >= 0 ? 1.0 / (index_prev + 1)
                                             : std::numeric_limits<double>::infinity();
  const Counterexample* best = nullptr;
  double best_rho = std::numeric_limits<double>::infinity();
  for (const Stage& st : dec_->stages) {
    for (const Counterexample& ce : st.certificates) {
      const double rho = geom::dist(phi, ce.psi);
      if (rho > rho_bound + 1e-12) continue;
      if (ce.tau + 1e-12 < slack_bound) continue;
      if (rho > 2.0 * epsilon_of_tau(ce.tau, gamma_) + 1e-12) continue;
      if (rho < best_rho) {
        best_rho = rho;
        best = &ce;
      }
    }
  }
  if (best == nullptr) {
    ++miss_count_;  // replay the previous drive direction, if any
    return;
  }
  ActiveDrive d;
  d.cert = *best;
  d.G = game::scalarize(g_, best->H.normal);
  d.ybar = one_forcing_y(g_, d.cert, d.G);
  drive_ = std::move(d);
  ++drives_started_;
}

Action HStar::drive_play(const std::optional<Action>& x) const {
  if (!drive_) return game::fallback_opponent(g_);
  if (drive_->ybar) return *drive_->ybar;
  Action xx = x ? *x : game::fallback_action(g_);
  return two_forcing_response(g_, drive_->G, xx);
}

Action HStar::act(const Point* phi, long long t, const std::optional<Action>& x) {
  if (t < horizon_ || phi == nullptr) {
    if (phi != nullptr) {
      last_phi_ = *phi;
      have_last_ = true;
    }
    return game::fallback_opponent(g_);
  }
  const int index_now = rind_index(*dec_, *phi);
  const int index_prev = prev_valid_ ? prev_rind_
                         : have_last_ ? rind_index(*dec_, last_phi_)
                                      : index_now;
  if (t == horizon_ || index_now != index_prev) start_drive(*phi, index_now, index_prev);
  prev_rind_ = index_now;
  prev_valid_ = true;
  last_phi_ = *phi;
  have_last_ = true;
  return drive_play(x);
}

Action h_star_step(const Game& g, const OnionDecomposition& dec,
                   const approach::Trajectory& history) {
  HStar hs(g, dec);
  Action y = hs.act(nullptr, 0, std::nullopt);
  for (size_t t = 0; t < history.rounds.size(); ++t) {
    const approach::Round& r = history.rounds[t];
    const Point* phi = &r.phi;
    // Replay decision t+2 sees phi_{t+1}; the final call is the step returned.
    y = hs.act(phi, static_cast<long long>(t + 1),
               t + 1 < history.rounds.size()
                   ? std::optional<Action>(history.rounds[t + 1].x)
                   : std::nullopt);
  }
  return y;
}

approach::YStrategy make_hstar_adversary(std::shared_ptr<HStar> hstar) {
  if (!hstar) throw ValidationError("make_hstar_adversary: null strategy");
  return [hstar](const approach::Trajectory& traj, const Action& x) {
    const Point* phi = traj.rounds.empty() ? nullptr : &traj.rounds.back().phi;
    return hstar->act(phi, static_cast<long long>(traj.rounds.size()),
                      std::optional<Action>(x));
  };
}

Classification classify(const Game& g, const geom::TargetSet& S, const PeelOptions& opts) {
  Classification out;
  const auto& pg = game::base(g);
  if (!game::is_mixed(g)) {
    auto grid = geom::make_direction_grid(pg.d, game::payoff_vertices(pg), opts.grid_count);
    double gap = 0.0;
    for (const Point& lambda : grid.dirs) gap = std::max(gap, game::minimax_gap(g, lambda));
    out.verdict = Verdict::Undecided;
    out.minimax_gap = gap;
    return out;
  }
  OnionDecomposition dec = peel(g, S, opts);
  out.verdict = dec.kind == OnionKind::Empty ? Verdict::Avoidable : Verdict::Approachable;
  out.decomposition = std::move(dec);
  return out;
}

double robustness_delta(const Counterexample& ce, double h) {
  const double margin = ce.value - geom::dot(ce.H.normal, ce.psi);
  const double d = std::min({(margin - ce.tau / 4.0) / 2.0, ce.tau / 8.0, h / 4.0});
  return std::max(d, 0.0);
}

}  // namespace blackwell::avoid
