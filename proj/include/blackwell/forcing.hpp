#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "blackwell/game.hpp"
#include "blackwell/geometry.hpp"

namespace blackwell::forcing {

using game::Action;
using game::Game;
using game::PureGame;
using geom::Halfspace;
using geom::Point;

enum class Player { X, Y };

// Quantifier witness: a fixed action for 1-forcing, a per-opponent-action
// table (pure) or responder function (mixed) for 2-forcing.
struct ForceCertificate {
  Player player = Player::X;
  int order = 1;
  std::string target;
  std::optional<Action> witness;                       // 1-force
  std::vector<Action> response;                        // 2-force, pure games
  std::function<Action(const Action&)> responder;      // 2-force, mixed games
};

// X 1-forces H = {<lambda,z> <= c}: mixed via LP value v(lambda) <= c + 1e-9
// with witness mu*; pure via exhaustive "exists row, all columns" test.
std::optional<ForceCertificate> x_one_forces_halfspace(const Game& g, const Halfspace& H);

// X 2-forces H: mixed via max-min value <= c + 1e-9 (responder = LP best
// response per opponent mixture); pure via "all columns, exists row".
std::optional<ForceCertificate> x_two_forces_halfspace(const Game& g, const Halfspace& H);

// Y 2-forces the open complement H^c; succeeds exactly when X cannot 1-force
// H. Response: per-row best column (pure) or LP best response (mixed).
std::optional<ForceCertificate> y_two_forces_complement(const Game& g, const Halfspace& H);

// Y 1-forces the closed complement-side halfspace {<lambda,z> >= c'} for some
// c' > c: succeeds when the max-min value exceeds c + 1e-9; witness nu*.
std::optional<ForceCertificate> y_one_forces_complement(const Game& g, const Halfspace& H);

// Pure-game set 2-forcing: per column j a row i with dist(F[i][j], S) <= tol,
// tol = max(S.resolution(), 1e-9).
std::optional<ForceCertificate> x_two_forces_set(const PureGame& g, const geom::TargetSet& S);

struct DualityReport {
  bool one_force = false;        // X 1-forces the target
  bool y_two_force_comp = false; // Y 2-forces the complement
  bool bullet1 = false;          // one_force == !y_two_force_comp
  bool bullet2 = false;          // 1-force survives superset enlargement
  bool bullet3 = false;          // 1-force iff target meets every minimal Y-2-forcible set
  bool bullet4 = false;          // 1-force implies 2-force
  std::vector<std::string> violations;
  bool consistent() const { return bullet1 && bullet2 && bullet3 && bullet4; }
};

// Enumerates the four quantifier-exchange statements for a pure game against
// a set target (cloud tolerance) or a halfspace target.
DualityReport forcing_dualities_check(const PureGame& g, const geom::TargetSet& S);
DualityReport forcing_dualities_check(const PureGame& g, const Halfspace& H);

}  // namespace blackwell::forcing
