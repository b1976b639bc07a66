#pragma once

#include <vector>

namespace blackwell::lp {

enum class Direction { Minimize, Maximize };
enum class Sense { LessEq, Eq, GreaterEq };
enum class LPStatus { Optimal, Infeasible, Unbounded };

// Dense linear program. Variables are nonnegative unless marked free.
struct LinearProgram {
  Direction direction = Direction::Minimize;
  std::vector<double> objective;          // length n
  std::vector<std::vector<double>> A;     // m x n
  std::vector<double> rhs;                // length m
  std::vector<Sense> senses;              // length m
  std::vector<bool> free_vars;            // length n or empty (all >= 0)
};

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  std::vector<double> x;  // meaningful only when Optimal
  double value = 0.0;     // objective in the caller's direction
};

// Two-phase dense tableau simplex with Bland's rule (pivot tolerance 1e-9,
// pivot budget 1e6; exceeding the budget throws CycleLimitError).
LPResult solve_lp(const LinearProgram& prog);

// Zero-sum matrix game, row player minimizes: value = min_mu max_nu mu' G nu.
struct MatrixGameSolution {
  double value = 0.0;
  std::vector<double> mu;  // row player optimal mixed strategy
  std::vector<double> nu;  // column player optimal mixed strategy
};

// Solved by the classical value-shift LP pair; 2x2 and vector games use a
// closed form cross-checked against the LP in tests.
MatrixGameSolution matrix_game(const std::vector<std::vector<double>>& G);

}  // namespace blackwell::lp
