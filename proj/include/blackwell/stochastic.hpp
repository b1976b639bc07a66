#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blackwell/approach.hpp"
#include "blackwell/game.hpp"
#include "blackwell/geometry.hpp"

namespace blackwell::stochastic {

using game::Game;
using geom::Point;

// Counter-based splitmix64 stream; identical seeds reproduce runs bit-for-bit
// across platforms.
class SeededSource {
 public:
  explicit SeededSource(std::uint64_t seed, std::string algorithm = "splitmix64");
  std::uint64_t seed() const { return seed_; }
  const std::string& algorithm() const { return algorithm_; }
  std::uint64_t next_u64();
  double next_double();  // uniform in [0, 1), 53-bit mantissa
  // Categorical draw by CDF walk; weights must be a probability vector.
  int sample_index(const std::vector<double>& weights);

 private:
  std::uint64_t seed_;
  std::string algorithm_;
  std::uint64_t state_;
};

// Smallest N with N >= (gamma^2 / 2 eps^2) ln(2d / (eps (1 - exp(-eps^2 / 2 gamma^2)))).
long long hoeffding_horizon(double eps, double gamma, int d);

struct SampledRound {
  std::vector<double> mu, nu;
  int x = 0, y = 0;
  Point realized;        // F[x][y]
  Point empirical_mean;  // running average of realized payoffs
  Point expected_mean;   // running average of Ef(mu_t, nu_t)
};

// The expected_view trajectory is the deterministic run of the same strategies
// on (X, Y, Ef): strategies consume only that view, never the samples.
struct StochasticRun {
  std::vector<SampledRound> rounds;
  approach::Trajectory expected_view;
};

// Per round: strategies pick distributions from the expected view, x ~ mu then
// y ~ nu are sampled independently, and both means advance.
StochasticRun run_stochastic(const Game& g, const geom::TargetSet& S,
                             const approach::XStrategy& x_strategy,
                             const approach::YStrategy& y_strategy, long long T,
                             const SeededSource& src);

// Frequency of the deviation event (some n >= N with |emp - exp| >= eps)
// across runs, with a 3-standard-error binomial band.
struct DeviationReport {
  long long runs = 0;
  long long deviating = 0;
  double frequency = 0.0;
  double band = 0.0;
  bool pass = false;
};
DeviationReport deviation_audit(const std::vector<StochasticRun>& runs, double eps,
                                long long N);

}  // namespace blackwell::stochastic
