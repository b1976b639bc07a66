#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blackwell/approach.hpp"
#include "blackwell/errors.hpp"
#include "blackwell/game.hpp"
#include "blackwell/geometry.hpp"

namespace blackwell::avoid {

using game::Action;
using game::Game;
using geom::Halfspace;
using geom::Point;

// Guaranteed opponent distance gain per certificate:
// eps(tau) = tau^2 (sqrt(gamma^2 + tau^2) - gamma) / (8 (4 gamma^2 + tau^2)).
double epsilon_of_tau(double tau, double gamma);

// Candidate (phi, psi, H) that X cannot 1-force: value > offset.
// tau = rho(psi, H^c) = offset - <lambda, psi>; y_witness is a nu* that
// 1-forces {<lambda, z> >= value} (always available for mixed games).
struct Counterexample {
  Point phi, psi;
  Halfspace H;
  double tau = 0.0;
  double value = 0.0;
  std::optional<Action> y_witness;
};

// Deterministic scan: psi over the cloud of S (non-clouds sampled at h=0.01),
// lambda over the grid, radius descending over 21 steps. Accepts only exact
// certificates: project(phi, S).distance >= r - 1e-7 and phi in the payoff
// hull, with value margin above tau.
std::optional<Counterexample> find_counterexample(const Game& g, const geom::TargetSet& S,
                                                  double tau,
                                                  const geom::DirectionGrid& directions);

// One excess-removal pass: per-psi first-lambda certificates collected over a
// full scan, then every point strictly inside some B(psi, eps(tau)) removed.
std::pair<geom::PointCloud, std::vector<Counterexample>> shrink(
    const Game& g, const geom::PointCloud& S, double tau,
    const geom::DirectionGrid& directions);

// Stage i holds S_i, tolerance 1/(i+1), and the certificates that produced
// S_{i+1}. Stage 0 may keep the analytic input set; stages cloud lazily on
// first removal.
struct Stage {
  geom::TargetSet set;
  double tolerance = 1.0;
  std::vector<Counterexample> certificates;
};

enum class OnionKind { Empty, ASetApprox };

// Empty: N = first empty stage index, delta = eps(1/N), horizon = ceil(8/delta).
// ASetApprox: stages.back() approximates S_infinity, residual_tau = the final
// sweep tolerance, delta = 0 and horizon = max (the T(S) = infinity case).
struct OnionDecomposition {
  std::vector<Stage> stages;
  OnionKind kind = OnionKind::ASetApprox;
  int N = 0;
  double residual_tau = 0.0;
  double delta = 0.0;
  long long horizon = std::numeric_limits<long long>::max();
};

class StageBudgetExceeded : public Error {
 public:
  StageBudgetExceeded(const std::string& what, OnionDecomposition partial);
  const OnionDecomposition& partial() const { return *partial_; }

 private:
  std::shared_ptr<const OnionDecomposition> partial_;
};

struct PeelOptions {
  int stage_budget = 64;
  int grid_count = 0;     // 0 = per-dimension default
  double cloud_h = 0.01;  // lazy clouding resolution for analytic stages
};

// S_{i+1} = shrink(S_i, 1/(i+1)) until empty, or until two consecutive
// stages remove nothing and a sweep at tau_min = 1/(budget+1) is clean.
// A dirty sweep keeps peeling; a dirty sweep after the budget throws
// StageBudgetExceeded carrying the partial decomposition.
OnionDecomposition peel(const Game& g, const geom::TargetSet& S, const PeelOptions& opts = {});

// -1 when delta > 0 and phi is outside (S_0)_delta; max{i : phi in (S_i)_delta}
// when inside; kRindInfinity sentinel for ASetApprox decompositions.
int rind_index(const OnionDecomposition& dec, const Point& phi);

// x_i supplier for drives (1-based call index).
using XStream = std::function<Action(long long)>;

struct DriveResult {
  std::vector<Action> ys;
  long long M = 0;
  std::vector<Point> partial_means;  // q_i = (T p + sum z_j) / (T + i)
};

// Forces payoffs into H^c from p in B(psi, 2 eps(tau)) until
// rho(phi, q_M) <= rho(phi, psi) - eps(tau); M must stay within
// ceil(T gamma eps / 8) or DriveOverrunError is thrown. Plays a single
// 1-forcing y when one exists, else the per-x best response.
DriveResult antiforce_drive(const Game& g, const Counterexample& ce, const Point& p,
                            long long T, const XStream& xs);

// Stateful h*: arbitrary before T(S); starts a drive at t = T(S) and on every
// rind-index change by matching a stored certificate with
// rho(phi_t, psi) <= 2 eps(1/(I_t+1)) and slack >= 1/(I_prev+1); keeps the
// same drive while the index is unchanged. Unmatched changes are counted as
// certificate misses and the previous drive direction is replayed.
class HStar {
 public:
  HStar(Game g, OnionDecomposition dec);
  // Call once per round in order: t = completed rounds, phi = current mean
  // (null when t = 0), x = approacher action when visible (pure games need it
  // for 2-forcing; mixed drives 1-force and ignore it).
  Action act(const Point* phi, long long t, const std::optional<Action>& x);
  long long miss_count() const { return miss_count_; }
  long long drives_started() const { return drives_started_; }
  const OnionDecomposition& decomposition() const { return *dec_; }

 private:
  struct ActiveDrive {
    Counterexample cert;
    std::optional<Action> ybar;
    std::vector<std::vector<double>> G;
  };
  void start_drive(const Point& phi, int index_now, int index_prev);
  Action drive_play(const std::optional<Action>& x) const;

  Game g_;
  std::shared_ptr<const OnionDecomposition> dec_;
  double gamma_ = 0.0;
  long long horizon_ = 0;
  std::optional<ActiveDrive> drive_;
  Point last_phi_;
  bool have_last_ = false;
  int prev_rind_ = approach::kRindUntracked;
  bool prev_valid_ = false;
  long long miss_count_ = 0;
  long long drives_started_ = 0;
};

// Stateless single step: replays the recorded history through a fresh HStar
// (x actions in the history are visible to the replay).
Action h_star_step(const Game& g, const OnionDecomposition& dec,
                   const approach::Trajectory& history);

// Adapter sharing one HStar across a run_duel / run_avoid adversary slot.
approach::YStrategy make_hstar_adversary(std::shared_ptr<HStar> hstar);

enum class Verdict { Approachable, Avoidable, Undecided };

struct Classification {
  Verdict verdict = Verdict::Undecided;
  std::optional<OnionDecomposition> decomposition;
  double minimax_gap = 0.0;  // pure-game diagnostic: max gap over the grid
};

// Mixed games: peel and map Empty -> Avoidable, ASetApprox -> Approachable.
// Pure games: Undecided with the max scalarized minimax gap over the grid.
Classification classify(const Game& g, const geom::TargetSet& S, const PeelOptions& opts = {});

// Hausdorff perturbation budget under which a certificate survives a re-scan
// at tau/4 (empirically validated); h is the cloud resolution.
double robustness_delta(const Counterexample& ce, double h);

}  // namespace blackwell::avoid
