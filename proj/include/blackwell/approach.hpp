#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "blackwell/game.hpp"
#include "blackwell/geometry.hpp"

namespace blackwell::approach {

using game::Action;
using game::Game;
using geom::Halfspace;
using geom::Point;

// Per-round tolerances tau_t (t >= 1) with sum_t tau_t <= gamma.
class ToleranceSchedule {
 public:
  // tau_t = gamma * 2^-t, floored at gamma * 2^-1000 so tau_t stays positive
  // in double precision (the floor's total contribution is below 1 ulp).
  static ToleranceSchedule geometric_halving(double gamma);
  // Explicit positive list; rounds past the end reuse the last entry.
  static ToleranceSchedule custom(std::vector<double> taus);
  double tau(long long t) const;
  // sum_{i=1..t} tau_i.
  double sum_prefix(long long t) const;

 private:
  ToleranceSchedule() = default;
  bool geometric_ = true;
  double gamma_ = 0.0;
  std::vector<double> taus_;
};

// Candidate (phi, psi, H) plus the 1-forcing witness; slack = c - <lambda,psi>.
struct HalfspaceForcingExample {
  Point phi, psi;
  Halfspace H;  // H = {z : <lambda, z> <= c}, lambda unit along phi - psi
  Action witness;
  double slack = 0.0;
};

// Candidate that X cannot 1-force: v(lambda) exceeded every admissible offset.
struct NotASetEvidence {
  Point phi, psi;
  Halfspace H;   // the rejected halfspace at offset c
  double value = 0.0;  // scalarized game value v(lambda)
};

using ExampleOrEvidence = std::variant<HalfspaceForcingExample, NotASetEvidence>;

// psi = project(phi, S), lambda = (phi-psi)/|phi-psi|,
// v = scalarized game value, c = max(<l,psi>, min(v, <l,psi> + tau)).
// Example iff v <= c < <lambda, phi>, else evidence. Requires phi outside S.
ExampleOrEvidence find_example(const Game& g, const geom::TargetSet& S, const Point& phi,
                               double tau);

constexpr int kRindUntracked = -2147483647 - 1;
constexpr int kRindInfinity = 2147483647;

// One completed round. cand_phi/cand_psi hold the decision-time candidate for
// audits and are empty when the mean was already inside S (or t = 1).
struct Round {
  Action x, y;
  Point payoff;
  Point phi;  // running mean after this round
  double dist = 0.0;
  double tau = 0.0;
  bool example_found = false;
  double slack = 0.0;
  int rind = kRindUntracked;
  Point cand_phi, cand_psi;
};

struct Trajectory {
  Game game;
  geom::TargetSet target;
  std::vector<Round> rounds;
  std::vector<NotASetEvidence> evidence;
};

// X-side decision with the bookkeeping run_duel copies into the Round.
struct XDecision {
  Action x;
  double tau = 0.0;
  bool example_found = false;
  double slack = 0.0;
  Point cand_phi, cand_psi;
  std::optional<NotASetEvidence> evidence;
};

// Round t+1: X decides from H_t; Y sees H_t plus x_{t+1}.
using XStrategy = std::function<XDecision(const Trajectory&)>;
using YStrategy = std::function<Action(const Trajectory&, const Action&)>;
// Optional per-round rind tagging (wired by the avoidance harness).
using RindTracker = std::function<int(const Point&)>;

// Stateless g* decision core shared by g_star_step and the streaming player.
// phi_prev is null when no round has been played. Mean inside S at tolerance
// max(S.resolution(), 1e-9) or a degenerate direction falls back.
struct GStarDecision {
  Action x;
  double tau = 0.0;
  bool example_found = false;
  bool inside = false;
  double slack = 0.0;
  Point cand_phi, cand_psi;
  std::optional<NotASetEvidence> evidence;
};
GStarDecision g_star_decide(const Game& g, const geom::TargetSet& S,
                            const ToleranceSchedule& schedule, const Point* phi_prev,
                            long long t_seen);

// Stateless single-step form: decide from a recorded history.
Action g_star_step(const Game& g, const geom::TargetSet& S, const Trajectory& history,
                   const ToleranceSchedule& schedule);

// Streaming g* for long duels: tracks its own running mean, O(1) memory.
// Keeps the first 1024 evidence certificates and counts the rest.
class GStarPlayer {
 public:
  GStarPlayer(Game g, geom::TargetSet S, ToleranceSchedule schedule);
  GStarDecision decide() const;
  void observe(const Point& z);
  const Point& mean() const { return mean_; }
  long long rounds_seen() const { return t_; }
  const std::vector<NotASetEvidence>& evidence() const { return evidence_; }
  long long evidence_count() const { return evidence_count_; }
  void log_evidence(const NotASetEvidence& e);

 private:
  Game g_;
  geom::TargetSet S_;
  ToleranceSchedule sched_;
  Point mean_;
  long long t_ = 0;
  std::vector<NotASetEvidence> evidence_;
  long long evidence_count_ = 0;
};

// Generic duel loop; both sides are explicit strategies.
Trajectory run_duel(const Game& g, const geom::TargetSet& S, const XStrategy& x_strategy,
                    const YStrategy& y_strategy, long long T,
                    const RindTracker& rind = {});

// g* versus an adversary; validates sum tau <= gamma over the horizon.
Trajectory run_approach(const Game& g, const geom::TargetSet& S, const YStrategy& adversary,
                        long long T, const ToleranceSchedule& schedule);

// Role-swapped duel: the y side is the strategy under test, the x side is a
// generic approacher (the avoidance harness; y still sees x each round).
Trajectory run_avoid(const Game& g, const geom::TargetSet& S, const YStrategy& avoider,
                     const XStrategy& approacher, long long T,
                     const RindTracker& rind = {});

// Envelope and per-round force audit over a finished trajectory.
struct AuditReport {
  std::vector<long long> envelope_violations;  // 1-based round indices
  std::vector<long long> force_violations;
  bool ok() const { return envelope_violations.empty() && force_violations.empty(); }
};
AuditReport potential_audit(const Trajectory& traj, const ToleranceSchedule& schedule,
                            double gamma);

// Registered adversaries.
YStrategy make_random_adversary(unsigned long long seed);
// Greedy: the pure column maximizing dist(next mean, S) given x.
YStrategy make_bestresponse_adversary();
// Cycles through a fixed action list.
YStrategy make_scripted_adversary(std::vector<Action> script);

}  // namespace blackwell::approach
