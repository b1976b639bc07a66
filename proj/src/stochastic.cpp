#include "blackwell/stochastic.hpp"

#include <cmath>
#include <utility>

#include "blackwell/errors.hpp"

namespace blackwell::stochastic {

SeededSource::SeededSource(std::uint64_t seed, std::string algorithm)
    : seed_(seed), algorithm_(std::move(algorithm)), state_(seed) {
  if (algorithm_ != "splitmix64")
    throw ValidationError("SeededSource: unknown algorithm label");
}

std::uint64_t SeededSource::next_u64() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SeededSource::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int SeededSource::sample_index(const std::vector<double>& weights) {
  if (weights.empty()) throw ValidationError("sample_index: empty weights");
  const double u = next_double();
  double cum = 0.0;
  int last_positive = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) last_positive = static_cast<int>(i);
    cum += weights[i];
    if (u < cum) return static_cast<int>(i);
  }
  return last_positive;  // cdf rounded below 1
}

long long hoeffding_horizon(double eps, double gamma, int d) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw NonPositiveInputError("hoeffding_horizon: eps must lie in (0, 1)");
  if (!(gamma > 0.0)) throw NonPositiveInputError("hoeffding_horizon: gamma must be positive");
  if (d < 1) throw NonPositiveInputError("hoeffding_horizon: dimension must be at least 1");
  const double rate = eps * eps / (2.0 * gamma * gamma);
  const double bound = (gamma * gamma / (2.0 * eps * eps)) *
                       std::log(2.0 * d / (eps * (1.0 - std::exp(-rate))));
  return std::max<long long>(1, static_cast<long long>(std::ceil(bound)));
}

StochasticRun run_stochastic(const Game& g, const geom::TargetSet& S,
                             const approach::XStrategy& x_strategy,
                             const approach::YStrategy& y_strategy, long long T,
                             const SeededSource& src) {
  if (!game::is_mixed(g))
    throw KindMismatchError("run_stochastic: sampling requires a mixed game");
  if (T < 1) throw ValidationError("run_stochastic: horizon must be at least 1");
  const auto& pg = game::base(g);
  SeededSource rng = src;
  StochasticRun run{{}, approach::Trajectory{g, S, {}, {}}};
  run.rounds.reserve(static_cast<size_t>(T));
  run.expected_view.rounds.reserve(static_cast<size_t>(T));
  Point expected_mean, empirical_mean;

  auto as_weights = [](const game::Action& a, int count) {
    if (!a.is_pure()) return a.weights();
    std::vector<double> w(static_cast<size_t>(count), 0.0);
    w[static_cast<size_t>(a.index())] = 1.0;
    return w;
  };

  for (long long t = 1; t <= T; ++t) {
    approach::XDecision dx = x_strategy(run.expected_view);
    game::Action ya = y_strategy(run.expected_view, dx.x);

    SampledRound sr;
    sr.mu = as_weights(dx.x, pg.m);
    sr.nu = as_weights(ya, pg.n);
    sr.x = rng.sample_index(sr.mu);
    sr.y = rng.sample_index(sr.nu);
    sr.realized = pg.F[static_cast<size_t>(sr.x)][static_cast<size_t>(sr.y)];

    Point z = game::payoff(g, dx.x, ya);
    expected_mean = (t == 1) ? z : geom::accumulate_mean(expected_mean, z, t - 1);
    empirical_mean =
        (t == 1) ? sr.realized : geom::accumulate_mean(empirical_mean, sr.realized, t - 1);
    sr.expected_mean = expected_mean;
    sr.empirical_mean = empirical_mean;

    approach::Round r;
    r.x = dx.x;
    r.y = ya;
    r.payoff = z;
    r.phi = expected_mean;
    r.dist = geom::project(expected_mean, S).distance;
    r.tau = dx.tau;
    r.example_found = dx.example_found;
    r.slack = dx.slack;
    r.cand_phi = dx.cand_phi;
    r.cand_psi = dx.cand_psi;
    if (dx.evidence) run.expected_view.evidence.push_back(*dx.evidence);
    run.expected_view.rounds.push_back(std::move(r));
    run.rounds.push_back(std::move(sr));
  }
  return run;
}

DeviationReport deviation_audit(const std::vector<StochasticRun>& runs, double eps,
                                long long N) {
  if (!(eps > 0.0)) throw NonPositiveInputError("deviation_audit: eps must be positive");
  if (N < 1) throw ValidationError("deviation_audit: N must be at least 1");
  DeviationReport rep;
  rep.runs = static_cast<long long>(runs.size());
  for (const StochasticRun& run : runs) {
    if (static_cast<long long>(run.rounds.size()) < N)
      throw ValidationError("deviation_audit: run shorter than N");
    bool deviates = false;
    for (size_t n = static_cast<size_t>(N - 1); n < run.rounds.size(); ++n) {
      const SampledRound& sr = run.rounds[n];
      if (geom::dist(sr.empirical_mean, sr.expected_mean) >= eps) {
        deviates = true;
        break;
      }
    }
    if (deviates) ++rep.deviating;
  }
  if (rep.runs > 0) rep.frequency = static_cast<double>(rep.deviating) / rep.runs;
  rep.band = rep.runs > 0 ? 3.0 * std::sqrt(eps * (1.0 - eps) / rep.runs) : 0.0;
  rep.pass = rep.frequency <= eps + rep.band;
  return rep;
}

}  // namespace blackwell::stochastic
