#include "blackwell/approach.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <utility>

#include "blackwell/errors.hpp"

namespace blackwell::approach {

namespace {

constexpr long long kGeometricFloorExp = 1000;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

ToleranceSchedule ToleranceSchedule::geometric_halving(double gamma) {
  if (!(gamma > 0.0)) throw NonPositiveInputError("ToleranceSchedule: gamma must be positive");
  ToleranceSchedule s;
  s.geometric_ = true;
  s.gamma_ = gamma;
  return s;
}

ToleranceSchedule ToleranceSchedule::custom(std::vector<double> taus) {
  if (taus.empty()) throw ValidationError("ToleranceSchedule: custom list must be nonempty");
  for (double t : taus)
    if (!(t > 0.0)) throw NonPositiveInputError("ToleranceSchedule: tolerances must be positive");
  ToleranceSchedule s;
  s.geometric_ = false;
  s.taus_ = std::move(taus);
  return s;
}

double ToleranceSchedule::tau(long long t) const {
  if (t < 1) throw IndexOutOfRangeError("ToleranceSchedule: rounds are 1-based");
  if (geometric_) return std::ldexp(gamma_, -static_cast<int>(std::min(t, kGeometricFloorExp)));
  const auto idx = std::min<long long>(t, static_cast<long long>(taus_.size()));
  return taus_[static_cast<size_t>(idx - 1)];
}

double ToleranceSchedule::sum_prefix(long long t) const {
  if (t < 0) throw IndexOutOfRangeError("ToleranceSchedule: negative prefix");
  if (t == 0) return 0.0;
  if (geometric_) {
    if (t <= kGeometricFloorExp) return gamma_ * (1.0 - std::ldexp(1.0, -static_cast<int>(t)));
    const double capped = gamma_ * (1.0 - std::ldexp(1.0, -static_cast<int>(kGeometricFloorExp)));
    return capped + static_cast<double>(t - kGeometricFloorExp) *
                        std::ldexp(gamma_, -static_cast<int>(kGeometricFloorExp));
  }
  double sum = 0.0;
  const auto len = static_cast<long long>(taus_.size());
  for (long long i = 1; i <= std::min(t, len); ++i) sum += taus_[static_cast<size_t>(i - 1)];
  if (t > len) sum += static_cast<double>(t - len) * taus_.back();
  return sum;
}

ExampleOrEvidence find_example(const Game& g, const geom::TargetSet& S, const Point& phi,
                               double tau) {
  if (!(tau > 0.0)) throw NonPositiveInputError("find_example: tau must be positive");
  geom::NearestPointResult near = geom::project(phi, S);
  Point diff = geom::sub(phi, near.point);
  const double r = geom::norm(diff);
  if (r <= 1e-12) throw DegenerateDirectionError("find_example: phi lies on S");
  Point lambda = geom::scale(diff, 1.0 / r);
  const double a = geom::dot(lambda, near.point);

  double v = 0.0;
  Action witness;
  if (game::is_mixed(g)) {
    lp::MatrixGameSolution sol = game::scalar_solution(g, lambda);
    v = sol.value;
    witness = Action::mixed(sol.mu);
  } else {
    const auto& pg = game::base(g);
    auto G = game::scalarize(g, lambda);
    v = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int i = 0; i < pg.m; ++i) {
      const double rowmax = *std::max_element(G[i].begin(), G[i].end());
      if (rowmax < v) {
        v = rowmax;
        arg = i;
      }
    }
    witness = Action::pure(arg);
  }

  const double c = std::max(a, std::min(v, a + tau));
  Halfspace H{lambda, c};
  if (v <= c && c < geom::dot(lambda, phi))
    return HalfspaceForcingExample{phi, near.point, H, witness, c - a};
  return NotASetEvidence{phi, near.point, H, v};
}

GStarDecision g_star_decide(const Game& g, const geom::TargetSet& S,
                            const ToleranceSchedule& schedule, const Point* phi_prev,
                            long long t_seen) {
  GStarDecision dec;
  dec.tau = schedule.tau(t_seen + 1);
  if (phi_prev == nullptr) {
    dec.x = game::fallback_action(g);
    dec.inside = true;
    return dec;
  }
  const double thresh = std::max(S.resolution(), 1e-9);
  geom::NearestPointResult near = geom::project(*phi_prev, S);
  if (near.distance <= thresh) {
    dec.x = game::fallback_action(g);
    dec.inside = true;
    return dec;
  }
  ExampleOrEvidence res = find_example(g, S, *phi_prev, dec.tau);
  if (auto* ex = std::get_if<HalfspaceForcingExample>(&res)) {
    dec.x = ex->witness;
    dec.example_found = true;
    dec.slack = ex->slack;
    dec.cand_phi = ex->phi;
    dec.cand_psi = ex->psi;
  } else {
    dec.x = game::fallback_action(g);
    dec.evidence = std::get<NotASetEvidence>(res);
  }
  return dec;
}

Action g_star_step(const Game& g, const geom::TargetSet& S, const Trajectory& history,
                   const ToleranceSchedule& schedule) {
  const Point* phi_prev = history.rounds.empty() ? nullptr : &history.rounds.back().phi;
  return g_star_decide(g, S, schedule, phi_prev, static_cast<long long>(history.rounds.size())).x;
}

GStarPlayer::GStarPlayer(Game g, geom::TargetSet S, ToleranceSchedule schedule)
    : g_(std::move(g)), S_(std::move(S)), sched_(std::move(schedule)) {}

GStarDecision GStarPlayer::decide() const {
  return g_star_decide(g_, S_, sched_, t_ > 0 ? &mean_ : nullptr, t_);
}

void GStarPlayer::observe(const Point& z) {
  mean_ = (t_ == 0) ? z : geom::accumulate_mean(mean_, z, t_);
  ++t_;
}

void GStarPlayer::log_evidence(const NotASetEvidence& e) {
  if (evidence_.size() < 1024) evidence_.push_back(e);
  ++evidence_count_;
}

Trajectory run_duel(const Game& g, const geom::TargetSet& S, const XStrategy& x_strategy,
                    const YStrategy& y_strategy, long long T, const RindTracker& rind) {
  if (T < 1) throw ValidationError("run_duel: horizon must be at least 1");
  Trajectory traj{g, S, {}, {}};
  traj.rounds.reserve(static_cast<size_t>(T));
  Point mean;
  for (long long t = 1; t <= T; ++t) {
    XDecision dx = x_strategy(traj);
    Action y = y_strategy(traj, dx.x);
    Point z = game::payoff(g, dx.x, y);
    mean = (t == 1) ? z : geom::accumulate_mean(mean, z, t - 1);
    Round r;
    r.x = dx.x;
    r.y = y;
    r.payoff = z;
    r.phi = mean;
    r.dist = geom::project(mean, S).distance;
    r.tau = dx.tau;
    r.example_found = dx.example_found;
    r.slack = dx.slack;
    r.cand_phi = dx.cand_phi;
    r.cand_psi = dx.cand_psi;
    if (rind) r.rind = rind(mean);
    if (dx.evidence) traj.evidence.push_back(*dx.evidence);
    traj.rounds.push_back(std::move(r));
  }
  return traj;
}

Trajectory run_approach(const Game& g, const geom::TargetSet& S, const YStrategy& adversary,
                        long long T, const ToleranceSchedule& schedule) {
  const double gamma = game::gamma_of(g);
  if (schedule.sum_prefix(T) > gamma * (1.0 + 1e-9) + 1e-12)
    throw ValidationError("run_approach: schedule tolerances exceed gamma over the horizon");
  XStrategy xs = [&g, &S, &schedule](const Trajectory& traj) {
    const Point* phi_prev = traj.rounds.empty() ? nullptr : &traj.rounds.back().phi;
    GStarDecision d =
        g_star_decide(traj.game, traj.target, schedule, phi_prev,
                      static_cast<long long>(traj.rounds.size()));
    (void)g;
    (void)S;
    return XDecision{d.x, d.tau, d.example_found, d.slack, d.cand_phi, d.cand_psi, d.evidence};
  };
  return run_duel(g, S, xs, adversary, T);
}

Trajectory run_avoid(const Game& g, const geom::TargetSet& S, const YStrategy& avoider,
                     const XStrategy& approacher, long long T, const RindTracker& rind) {
  return run_duel(g, S, approacher, avoider, T, rind);
}

AuditReport potential_audit(const Trajectory& traj, const ToleranceSchedule& schedule,
                            double gamma) {
  AuditReport rep;
  const auto rounds = static_cast<long long>(traj.rounds.size());
  for (long long t = 1; t <= rounds; ++t) {
    const Round& r = traj.rounds[static_cast<size_t>(t - 1)];
    const double bound =
        (gamma * gamma + 2.0 * gamma * schedule.sum_prefix(t - 1)) / static_cast<double>(t);
    if (r.dist * r.dist > bound + 1e-6) rep.envelope_violations.push_back(t);
    if (!r.example_found) continue;
    Point dir = geom::sub(r.cand_phi, r.cand_psi);
    const int n = game::base(traj.game).n;
    for (int j = 0; j < n; ++j) {
      Point z = game::payoff(traj.game, r.x, Action::pure(j));
      if (geom::dot(geom::sub(z, r.cand_psi), dir) > r.tau * gamma + 1e-7) {
        rep.force_violations.push_back(t);
        break;
      }
    }
  }
  return rep;
}

YStrategy make_random_adversary(unsigned long long seed) {
  auto state = std::make_shared<std::uint64_t>(seed);
  return [state](const Trajectory& traj, const Action&) {
    const int n = game::base(traj.game).n;
    return Action::pure(static_cast<int>(splitmix64(*state) % static_cast<std::uint64_t>(n)));
  };
}

YStrategy make_bestresponse_adversary() {
  return [](const Trajectory& traj, const Action& x) {
    const int n = game::base(traj.game).n;
    const long long t = static_cast<long long>(traj.rounds.size());
    const Point* mean = t > 0 ? &traj.rounds.back().phi : nullptr;
    int best = 0;
    double bestd = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      Point z = game::payoff(traj.game, x, Action::pure(j));
      Point next = mean ? geom::accumulate_mean(*mean, z, t) : z;
      const double dd = geom::project(next, traj.target).distance;
      if (dd > bestd + 1e-12) {
        bestd = dd;
        best = j;
      }
    }
    return Action::pure(best);
  };
}

YStrategy make_scripted_adversary(std::vector<Action> script) {
  if (script.empty()) throw ValidationError("scripted adversary: script must be nonempty");
  auto shared = std::make_shared<std::vector<Action>>(std::move(script));
  return [shared](const Trajectory& traj, const Action&) {
    return (*shared)[traj.rounds.size() % shared->size()];
  };
}

}  // namespace blackwell::approach
