// Command-line front end: scenario registry, simulation, peeling, forcing
// queries, LP and game values, stochastic audits. All artifacts are CSV or
// JSON, formatted deterministically (%.17g) so reruns are byte-identical.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blackwell/approach.hpp"
#include "blackwell/avoid.hpp"
#include "blackwell/errors.hpp"
#include "blackwell/forcing.hpp"
#include "blackwell/game.hpp"
#include "blackwell/geometry.hpp"
#include "blackwell/lp.hpp"
#include "blackwell/scenario.hpp"
#include "blackwell/stochastic.hpp"
#include "json.hpp"

namespace {

namespace approach = blackwell::approach;
namespace avoid = blackwell::avoid;
namespace forcing = blackwell::forcing;
namespace game = blackwell::game;
namespace geom = blackwell::geom;
namespace lp = blackwell::lp;
namespace scn = blackwell::scenario;
namespace stochastic = blackwell::stochastic;
using json = nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string out_dir() {
  const char* dir = std::getenv("BLACKWELL_OUT_DIR");
  return dir && *dir ? dir : ".";
}

std::string artifact_path(const std::string& stem) {
  std::string safe = stem;
  for (char& c : safe)
    if (c == '/' || c == '\\') c = '_';
  return out_dir() + "/" + safe;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw blackwell::ValidationError("cannot write artifact '" + path + "'");
  out << content;
}

geom::Point parse_point_csv(const std::string& text) {
  geom::Point p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      p.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw blackwell::ParseError("cannot parse number '" + item + "'");
    }
  }
  if (p.empty()) throw blackwell::ParseError("expected a comma-separated number list");
  return p;
}

json action_to_json(const game::Action& a) {
  if (a.is_pure()) return json{{"pure", a.index()}};
  return json{{"mixed", a.weights()}};
}

std::vector<game::Action> parse_script(const std::string& path, const game::Game& g) {
  std::ifstream in(path);
  if (!in) throw blackwell::ParseError("cannot read script '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::exception& e) {
    throw blackwell::ParseError("script '" + path + "': " + e.what());
  }
  if (!j.is_array() || j.empty())
    throw blackwell::ParseError("script '" + path + "': expected a nonempty action array");
  std::vector<game::Action> script;
  for (const auto& entry : j) {
    if (entry.is_number_integer()) {
      script.push_back(game::Action::pure(entry.get<int>()));
    } else if (entry.is_array()) {
      if (!game::is_mixed(g))
        throw blackwell::ValidationError("script mixes weights into a pure game");
      script.push_back(game::Action::mixed(entry.get<std::vector<double>>()));
    } else {
      throw blackwell::ParseError("script entries must be indices or weight arrays");
    }
  }
  return script;
}

// g* as a duel strategy: the stateless decision core applied to the history.
approach::XStrategy gstar_strategy(const approach::ToleranceSchedule& sched) {
  return [sched](const approach::Trajectory& traj) {
    const geom::Point* prev = traj.rounds.empty() ? nullptr : &traj.rounds.back().phi;
    approach::GStarDecision d = approach::g_star_decide(
        traj.game, traj.target, sched, prev, static_cast<long long>(traj.rounds.size()));
    return approach::XDecision{d.x,    d.tau,      d.example_found, d.slack,
                               d.cand_phi, d.cand_psi, d.evidence};
  };
}

approach::YStrategy make_adversary(const std::string& kind, const game::Game& g,
                                   const geom::TargetSet& S, unsigned long long seed,
                                   const avoid::PeelOptions& popts,
                                   std::shared_ptr<avoid::HStar>* hstar_out) {
  if (kind == "random") return approach::make_random_adversary(seed);
  if (kind == "bestresponse") return approach::make_bestresponse_adversary();
  if (kind == "hstar") {
    avoid::OnionDecomposition dec = avoid::peel(g, S, popts);
    auto hs = std::make_shared<avoid::HStar>(g, dec);
    if (hstar_out) *hstar_out = hs;
    return avoid::make_hstar_adversary(hs);
  }
  if (kind.rfind("script:", 0) == 0)
    return approach::make_scripted_adversary(parse_script(kind.substr(7), g));
  throw blackwell::ValidationError("unknown adversary '" + kind + "'");
}

std::string trajectory_csv(const approach::Trajectory& traj, bool with_rind) {
  const int d = game::base(traj.game).d;
  std::ostringstream out;
  out << "t";
  for (int k = 0; k < d; ++k) out << ",phi_" << k;
  out << ",dist,tau,example_found,slack";
  if (with_rind) out << ",rind";
  out << "\n";
  for (size_t t = 0; t < traj.rounds.size(); ++t) {
    const approach::Round& r = traj.rounds[t];
    out << (t + 1);
    for (int k = 0; k < d; ++k) out << "," << fmt(r.phi[k]);
    out << "," << fmt(r.dist) << "," << fmt(r.tau) << "," << (r.example_found ? 1 : 0) << ","
        << fmt(r.slack);
    if (with_rind) out << "," << r.rind;
    out << "\n";
  }
  return out.str();
}

json counterexample_to_json(const avoid::Counterexample& ce) {
  json j{{"psi", ce.psi},  {"phi", ce.phi},     {"lambda", ce.H.normal},
         {"c", ce.H.offset}, {"tau", ce.tau},   {"value", ce.value}};
  if (ce.y_witness) j["y_witness"] = action_to_json(*ce.y_witness);
  return j;
}

std::optional<long long> cloud_size(const geom::TargetSet& S) {
  if (const auto* cloud = std::get_if<geom::PointCloud>(&S.rep()))
    return static_cast<long long>(cloud->points.size());
  return std::nullopt;
}

json decomposition_to_json(const avoid::OnionDecomposition& dec, const std::string& label) {
  json stages = json::array();
  for (size_t i = 0; i < dec.stages.size(); ++i) {
    const avoid::Stage& st = dec.stages[i];
    json certs = json::array();
    for (const auto& ce : st.certificates) certs.push_back(counterexample_to_json(ce));
    json sj{{"index", i},
            {"tolerance", st.tolerance},
            {"certificates", std::move(certs)}};
    if (auto sz = cloud_size(st.set))
      sj["points"] = *sz;
    else
      sj["points"] = nullptr;
    stages.push_back(std::move(sj));
  }
  json j{{"classification", label},
         {"N", dec.N},
         {"delta", dec.delta},
         {"residual_tau", dec.residual_tau},
         {"stages", std::move(stages)}};
  if (dec.kind == avoid::OnionKind::Empty)
    j["horizon"] = dec.horizon;
  else
    j["horizon"] = nullptr;
  return j;
}

int emit_report(const scn::RunReport& report, int exit_code) {
  std::cout << scn::report_to_json(report) << "\n";
  return exit_code;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

struct SimulateArgs {
  std::string mode, scenario_name, target_name, adversary, csv_name;
  long long rounds = 0;
  double eps = 0.1;
  unsigned long long seed = 1;
  int stages = 64, grid = 0;
};

int run_simulate(const SimulateArgs& a) {
  Timer timer;
  scn::Scenario s = scn::load_scenario(a.scenario_name);
  const std::string target_key = a.target_name.empty() ? s.target : a.target_name;
  if (s.targets.find(target_key) == s.targets.end())
    throw blackwell::ValidationError("scenario has no target '" + target_key + "'");
  const geom::TargetSet& S = s.targets.at(target_key);
  const game::Game& g = s.game;
  const double gamma = game::gamma_of(g);
  const auto sched = approach::ToleranceSchedule::geometric_halving(gamma);
  avoid::PeelOptions popts;
  popts.stage_budget = a.stages;
  popts.grid_count = a.grid ? a.grid : s.grid_count.value_or(0);

  scn::RunReport report;
  report.scenario = s.name;
  report.mode = "simulate " + a.mode;
  report.seeds = {a.seed};
  const std::string csv_path = artifact_path(
      a.csv_name.empty() ? s.name + "_" + a.mode + ".csv" : a.csv_name);

  if (a.mode == "approach") {
    const std::string adv_kind = a.adversary.empty() ? s.adversary : a.adversary;
    approach::YStrategy adv = make_adversary(adv_kind, g, S, a.seed, popts, nullptr);
    const long long t_rate = static_cast<long long>(std::ceil(3.0 * gamma * gamma / (a.eps * a.eps)));
    const long long T = a.rounds > 0 ? a.rounds : 2 * t_rate;
    approach::Trajectory traj = approach::run_approach(g, S, adv, T, sched);
    write_file(csv_path, trajectory_csv(traj, false));
    report.artifacts = {csv_path};

    const double tol = a.eps + S.resolution() + 1e-7;
    long long first_miss = 0;
    double worst = 0.0;
    for (long long t = t_rate; t <= T; ++t) {
      const double d = traj.rounds[t - 1].dist;
      if (d > worst) worst = d;
      if (d > tol && first_miss == 0) first_miss = t;
    }
    const approach::AuditReport audit = approach::potential_audit(traj, sched, gamma);
    std::ostringstream oc;
    if (T < t_rate) {
      oc << "FAIL: rounds " << T << " below the rate threshold " << t_rate;
    } else if (first_miss != 0) {
      oc << "FAIL: dist " << fmt(traj.rounds[first_miss - 1].dist) << " > " << fmt(tol)
         << " at t=" << first_miss << " (threshold t>=" << t_rate << ")";
    } else if (!audit.ok()) {
      oc << "FAIL: potential envelope audit flagged " << audit.envelope_violations.size()
         << "+" << audit.force_violations.size() << " rounds";
    } else {
      oc << "PASS: dist <= " << fmt(tol) << " for all t >= " << t_rate << " (max "
         << fmt(worst) << "), envelope audit clean, adversary " << adv_kind;
    }
    report.outcome = oc.str();
    report.wall_seconds = timer.seconds();
    return emit_report(report, (T >= t_rate && first_miss == 0 && audit.ok()) ? 0 : 2);
  }

  // avoid mode: h* (the avoider) against g* targeting the same set.
  avoid::OnionDecomposition dec = avoid::peel(g, S, popts);
  if (dec.kind != avoid::OnionKind::Empty) {
    report.outcome = "FAIL: peel reports an A-set approximation; nothing to avoid";
    report.wall_seconds = timer.seconds();
    return emit_report(report, 2);
  }
  auto hs = std::make_shared<avoid::HStar>(g, dec);
  approach::YStrategy avoider = avoid::make_hstar_adversary(hs);
  approach::XStrategy approacher = gstar_strategy(sched);
  const long long T = a.rounds > 0 ? a.rounds : dec.horizon + 4096;
  approach::RindTracker tracker = [&dec](const geom::Point& p) {
    return avoid::rind_index(dec, p);
  };
  approach::Trajectory traj = approach::run_avoid(g, S, avoider, approacher, T, tracker);
  write_file(csv_path, trajectory_csv(traj, true));
  report.artifacts = {csv_path};

  long long first_escape = 0;
  long long escapes = 0;
  for (long long t = dec.horizon; t <= T; ++t) {
    if (traj.rounds[t - 1].dist > dec.delta) {
      ++escapes;
      if (first_escape == 0) first_escape = t;
    }
  }
  std::ostringstream oc;
  if (T < dec.horizon) {
    oc << "FAIL: rounds " << T << " below the horizon " << dec.horizon;
  } else if (first_escape == 0) {
    oc << "FAIL: no t >= " << dec.horizon << " with dist > delta=" << fmt(dec.delta);
  } else {
    oc << "PASS: dist > delta=" << fmt(dec.delta) << " at " << escapes
       << " rounds past the horizon " << dec.horizon << " (first t=" << first_escape
       << "), drives=" << hs->drives_started() << ", misses=" << hs->miss_count();
  }
  report.outcome = oc.str();
  report.wall_seconds = timer.seconds();
  return emit_report(report, (T >= dec.horizon && first_escape != 0) ? 0 : 2);
}

struct PeelArgs {
  std::string scenario_name, target_name;
  int stages = 64, grid = 0;
};

int run_peel(const PeelArgs& a) {
  Timer timer;
  scn::Scenario s = scn::load_scenario(a.scenario_name);
  const std::string target_key = a.target_name.empty() ? s.target : a.target_name;
  if (s.targets.find(target_key) == s.targets.end())
    throw blackwell::ValidationError("scenario has no target '" + target_key + "'");
  const geom::TargetSet& S = s.targets.at(target_key);
  avoid::PeelOptions popts;
  popts.stage_budget = a.stages;
  popts.grid_count = a.grid ? a.grid : s.grid_count.value_or(0);

  avoid::OnionDecomposition dec;
  std::string label;
  bool exceeded = false;
  try {
    dec = avoid::peel(s.game, S, popts);
    label = dec.kind == avoid::OnionKind::Empty ? "Empty" : "ASetApprox";
  } catch (const avoid::StageBudgetExceeded& e) {
    dec = e.partial();
    label = "BudgetExceeded";
    exceeded = true;
  }

  const std::string json_path = artifact_path(s.name + "_peel.json");
  write_file(json_path, decomposition_to_json(dec, label).dump(2) + "\n");

  std::ostringstream csv;
  csv << "stage,tolerance,certificates,hausdorff_to_prev\n";
  for (size_t i = 0; i < dec.stages.size(); ++i) {
    double hd = 0.0;
    if (i > 0) hd = geom::hausdorff(dec.stages[i - 1].set, dec.stages[i].set);
    csv << i << "," << fmt(dec.stages[i].tolerance) << ","
        << dec.stages[i].certificates.size() << "," << fmt(hd) << "\n";
  }
  const std::string csv_path = artifact_path(s.name + "_peel.csv");
  write_file(csv_path, csv.str());

  scn::RunReport report;
  report.scenario = s.name;
  report.mode = "peel";
  report.artifacts = {json_path, csv_path};
  std::ostringstream oc;
  oc << label << ": stages=" << dec.stages.size();
  if (dec.kind == avoid::OnionKind::Empty && !exceeded)
    oc << ", N=" << dec.N << ", delta=" << fmt(dec.delta) << ", horizon=" << dec.horizon;
  if (dec.kind == avoid::OnionKind::ASetApprox && !exceeded)
    oc << ", residual_tau=" << fmt(dec.residual_tau);
  report.outcome = oc.str();
  report.wall_seconds = timer.seconds();
  return emit_report(report, exceeded ? 2 : 0);
}

struct ForceArgs {
  std::string scenario_name, game_file, set_name, halfspace, player = "x";
  int order = 1;
  bool dualities = false;
};

int run_force(const ForceArgs& a) {
  game::Game g = [&] {
    if (!a.game_file.empty()) {
      std::ifstream in(a.game_file);
      if (!in) throw blackwell::ParseError("cannot read game '" + a.game_file + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      return scn::game_from_json_text(buf.str());
    }
    return scn::load_scenario(a.scenario_name).game;
  }();
  const int d = game::base(g).d;

  json result;
  bool consistent = true;
  if (!a.halfspace.empty()) {
    geom::Point raw = parse_point_csv(a.halfspace);
    if (static_cast<int>(raw.size()) != d + 1)
      throw blackwell::ValidationError("halfspace needs d normals plus an offset");
    geom::Halfspace H;
    H.normal.assign(raw.begin(), raw.end() - 1);
    H.offset = raw.back();
    if (a.dualities) {
      forcing::DualityReport rep = forcing::forcing_dualities_check(game::base(g), H);
      consistent = rep.consistent();
      result = json{{"one_force", rep.one_force},
                    {"y_two_force_comp", rep.y_two_force_comp},
                    {"bullet1", rep.bullet1},
                    {"bullet2", rep.bullet2},
                    {"bullet3", rep.bullet3},
                    {"bullet4", rep.bullet4},
                    {"violations", rep.violations}};
    } else {
      std::optional<forcing::ForceCertificate> cert;
      if (a.player == "x" && a.order == 1)
        cert = forcing::x_one_forces_halfspace(g, H);
      else if (a.player == "x" && a.order == 2)
        cert = forcing::x_two_forces_halfspace(g, H);
      else if (a.player == "y" && a.order == 2)
        cert = forcing::y_two_forces_complement(g, H);
      else
        cert = forcing::y_one_forces_complement(g, H);
      result = json{{"forces", cert.has_value()}, {"player", a.player}, {"order", a.order}};
      if (cert) {
        result["target"] = cert->target;
        if (cert->witness) result["witness"] = action_to_json(*cert->witness);
        if (!cert->response.empty()) {
          json resp = json::array();
          for (const auto& act : cert->response) resp.push_back(action_to_json(act));
          result["response"] = std::move(resp);
        }
        if (cert->responder) result["responder"] = "callable";
      }
    }
  } else if (!a.set_name.empty()) {
    scn::Scenario s = scn::load_scenario(a.scenario_name);
    if (s.targets.find(a.set_name) == s.targets.end())
      throw blackwell::ValidationError("scenario has no target '" + a.set_name + "'");
    const geom::TargetSet& S = s.targets.at(a.set_name);
    if (a.dualities) {
      forcing::DualityReport rep = forcing::forcing_dualities_check(game::base(g), S);
      consistent = rep.consistent();
      result = json{{"one_force", rep.one_force},
                    {"y_two_force_comp", rep.y_two_force_comp},
                    {"bullet1", rep.bullet1},
                    {"bullet2", rep.bullet2},
                    {"bullet3", rep.bullet3},
                    {"bullet4", rep.bullet4},
                    {"violations", rep.violations}};
    } else {
      if (a.player != "x" || a.order != 2)
        throw blackwell::ValidationError("set targets support x 2-forcing queries only");
      auto cert = forcing::x_two_forces_set(game::base(g), S);
      result = json{{"forces", cert.has_value()}, {"player", "x"}, {"order", 2}};
      if (cert && !cert->response.empty()) {
        json resp = json::array();
        for (const auto& act : cert->response) resp.push_back(action_to_json(act));
        result["response"] = std::move(resp);
      }
    }
  } else {
    throw blackwell::ValidationError("force needs --halfspace or --set");
  }
  std::cout << result.dump(2) << "\n";
  return consistent ? 0 : 2;
}

int run_lp_solve(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw blackwell::ParseError("cannot read LP '" + file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  lp::LinearProgram prog = scn::lp_from_json_text(buf.str());
  lp::LPResult res = lp::solve_lp(prog);
  const char* status = res.status == lp::LPStatus::Optimal      ? "Optimal"
                       : res.status == lp::LPStatus::Infeasible ? "Infeasible"
                                                                : "Unbounded";
  json j{{"status", status}};
  if (res.status == lp::LPStatus::Optimal) {
    j["x"] = res.x;
    j["value"] = res.value;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_game_value(const std::string& file, const std::string& scenario_name,
                   const std::string& lambda_csv) {
  game::Game g = [&] {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw blackwell::ParseError("cannot read game '" + file + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      return scn::game_from_json_text(buf.str());
    }
    return scn::load_scenario(scenario_name).game;
  }();
  const game::PureGame& base = game::base(g);
  geom::Point lambda(base.d, 0.0);
  lambda[0] = 1.0;
  if (!lambda_csv.empty()) {
    lambda = parse_point_csv(lambda_csv);
    if (static_cast<int>(lambda.size()) != base.d)
      throw blackwell::ValidationError("lambda dimension differs from the game");
  }
  json j{{"m", base.m},
         {"n", base.n},
         {"d", base.d},
         {"gamma", base.gamma},
         {"mixed", game::is_mixed(g)},
         {"lambda", lambda},
         {"scalar_value", game::scalar_value(g, lambda)},
         {"minimax_gap", game::minimax_gap(g, lambda)}};
  if (game::is_mixed(g)) {
    lp::MatrixGameSolution sol = game::scalar_solution(g, lambda);
    j["mu"] = sol.mu;
    j["nu"] = sol.nu;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct StochArgs {
  std::string scenario_name, target_name, adversary, seeds = "1..20";
  long long rounds = 0, horizon = 0;
  double eps = 0.1;
};

int run_stochastic_cmd(const StochArgs& a) {
  Timer timer;
  scn::Scenario s = scn::load_scenario(a.scenario_name);
  const std::string target_key = a.target_name.empty() ? s.target : a.target_name;
  if (s.targets.find(target_key) == s.targets.end())
    throw blackwell::ValidationError("scenario has no target '" + target_key + "'");
  const geom::TargetSet& S = s.targets.at(target_key);
  const game::Game& g = s.game;
  const double gamma = game::gamma_of(g);
  const auto sched = approach::ToleranceSchedule::geometric_halving(gamma);

  const auto sep = a.seeds.find("..");
  unsigned long long lo = 0, hi = 0;
  try {
    if (sep == std::string::npos) {
      lo = hi = std::stoull(a.seeds);
    } else {
      lo = std::stoull(a.seeds.substr(0, sep));
      hi = std::stoull(a.seeds.substr(sep + 2));
    }
  } catch (const std::exception&) {
    throw blackwell::ParseError("cannot parse seed range '" + a.seeds + "'");
  }
  if (hi < lo) throw blackwell::ValidationError("seed range is empty");

  const long long N = a.horizon > 0
                          ? a.horizon
                          : stochastic::hoeffding_horizon(a.eps, gamma, game::base(g).d);
  const long long T = a.rounds > 0 ? a.rounds : N;

  std::vector<stochastic::StochasticRun> runs;
  std::vector<unsigned long long> seeds;
  std::ostringstream csv;
  const int d = game::base(g).d;
  csv << "run,t";
  for (int k = 0; k < d; ++k) csv << ",emp_" << k;
  for (int k = 0; k < d; ++k) csv << ",exp_" << k;
  csv << ",emp_dev\n";
  for (unsigned long long seed = lo; seed <= hi; ++seed) {
    seeds.push_back(seed);
    const std::string adv_kind = a.adversary.empty() ? s.adversary : a.adversary;
    approach::YStrategy adv =
        make_adversary(adv_kind, g, S, seed * 0x9E3779B97F4A7C15ULL + 1, {}, nullptr);
    stochastic::SeededSource src(seed);
    stochastic::StochasticRun run =
        stochastic::run_stochastic(g, S, gstar_strategy(sched), adv, T, src);
    for (size_t t = 0; t < run.rounds.size(); ++t) {
      const auto& r = run.rounds[t];
      csv << seed << "," << (t + 1);
      for (int k = 0; k < d; ++k) csv << "," << fmt(r.empirical_mean[k]);
      for (int k = 0; k < d; ++k) csv << "," << fmt(r.expected_mean[k]);
      csv << "," << fmt(geom::dist(r.empirical_mean, r.expected_mean)) << "\n";
    }
    runs.push_back(std::move(run));
  }
  const std::string csv_path = artifact_path(s.name + "_stochastic.csv");
  write_file(csv_path, csv.str());

  scn::RunReport report;
  report.scenario = s.name;
  report.mode = "stochastic run";
  report.artifacts = {csv_path};
  report.seeds = seeds;
  int code = 0;
  std::ostringstream oc;
  if (T < N) {
    oc << "audit skipped: rounds " << T << " below the horizon " << N;
  } else {
    stochastic::DeviationReport rep = stochastic::deviation_audit(runs, a.eps, N);
    oc << (rep.pass ? "PASS" : "FAIL") << ": deviation frequency " << fmt(rep.frequency)
       << " vs eps " << fmt(a.eps) << " + band " << fmt(rep.band) << " at N=" << N;
    code = rep.pass ? 0 : 2;
  }
  report.outcome = oc.str();
  report.wall_seconds = timer.seconds();
  return emit_report(report, code);
}

int run_classify(const std::string& scenario_name, const std::string& target_name, int stages,
                 int grid) {
  Timer timer;
  scn::Scenario s = scn::load_scenario(scenario_name);
  const std::string target_key = target_name.empty() ? s.target : target_name;
  if (s.targets.find(target_key) == s.targets.end())
    throw blackwell::ValidationError("scenario has no target '" + target_key + "'");
  avoid::PeelOptions popts;
  popts.stage_budget = stages;
  popts.grid_count = grid ? grid : s.grid_count.value_or(0);

  scn::RunReport report;
  report.scenario = s.name;
  report.mode = "classify";
  int code = 0;
  try {
    avoid::Classification c = avoid::classify(s.game, s.targets.at(target_key), popts);
    const char* verdict = c.verdict == avoid::Verdict::Approachable ? "Approachable"
                          : c.verdict == avoid::Verdict::Avoidable  ? "Avoidable"
                                                                    : "Undecided";
    std::ostringstream oc;
    oc << verdict;
    if (c.verdict == avoid::Verdict::Undecided)
      oc << ": minimax gap " << fmt(c.minimax_gap);
    if (c.decomposition && c.decomposition->kind == avoid::OnionKind::Empty)
      oc << ": N=" << c.decomposition->N << ", delta=" << fmt(c.decomposition->delta)
         << ", horizon=" << c.decomposition->horizon;
    report.outcome = oc.str();
  } catch (const avoid::StageBudgetExceeded& e) {
    report.outcome = std::string("Unresolved: ") + e.what();
    code = 2;
  }
  report.wall_seconds = timer.seconds();
  return emit_report(report, code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector-payoff repeated games: approachability strategies and audits"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "Run an approach or avoid duel");
  sim->add_option("mode", sim_args.mode, "approach or avoid")
      ->required()
      ->check(CLI::IsMember({"approach", "avoid"}));
  sim->add_option("--scenario", sim_args.scenario_name, "Builtin name or JSON path")->required();
  sim->add_option("--target", sim_args.target_name, "Named target override");
  sim->add_option("--rounds", sim_args.rounds, "Horizon (0 = mode default)");
  sim->add_option("--epsilon", sim_args.eps, "Rate-check epsilon (approach mode)");
  sim->add_option("--adversary", sim_args.adversary,
                  "random | bestresponse | hstar | script:FILE");
  sim->add_option("--seed", sim_args.seed, "Adversary seed");
  sim->add_option("--stages", sim_args.stages, "Peel stage budget (avoid mode)");
  sim->add_option("--grid", sim_args.grid, "Direction grid override");
  sim->add_option("--csv", sim_args.csv_name, "CSV artifact name");

  PeelArgs peel_args;
  CLI::App* peel = app.add_subcommand("peel", "Onion-peel a target set");
  peel->add_option("--scenario", peel_args.scenario_name, "Builtin name or JSON path")
      ->required();
  peel->add_option("--target", peel_args.target_name, "Named target override");
  peel->add_option("--stages", peel_args.stages, "Stage budget");
  peel->add_option("--grid", peel_args.grid, "Direction grid override");

  ForceArgs force_args;
  CLI::App* force = app.add_subcommand("force", "Forcing queries and duality checks");
  force->add_option("--scenario", force_args.scenario_name, "Builtin name or JSON path");
  force->add_option("--game", force_args.game_file, "Game JSON file");
  force->add_option("--halfspace", force_args.halfspace, "n_0,..,n_{d-1},offset");
  force->add_option("--set", force_args.set_name, "Named target (x 2-forcing)");
  force->add_option("--player", force_args.player, "x or y")
      ->check(CLI::IsMember({"x", "y"}));
  force->add_option("--order", force_args.order, "1 or 2")->check(CLI::IsMember({1, 2}));
  force->add_flag("--dualities", force_args.dualities, "Run the quantifier-exchange checks");

  std::string lp_file;
  CLI::App* lp_cmd = app.add_subcommand("lp", "Linear programming utilities");
  lp_cmd->require_subcommand(1);
  CLI::App* lp_solve = lp_cmd->add_subcommand("solve", "Solve an LP from JSON");
  lp_solve->add_option("--file", lp_file, "LP JSON file")->required();

  std::string game_file, game_scenario, game_lambda;
  CLI::App* game_cmd = app.add_subcommand("game", "Game value utilities");
  game_cmd->require_subcommand(1);
  CLI::App* game_value = game_cmd->add_subcommand("value", "Scalarized value and duality gap");
  game_value->add_option("--file", game_file, "Game JSON file");
  game_value->add_option("--scenario", game_scenario, "Builtin name or JSON path");
  game_value->add_option("--lambda", game_lambda, "Direction (default e_0)");

  StochArgs stoch_args;
  CLI::App* stoch = app.add_subcommand("stochastic", "Sampled-play runs and audits");
  stoch->require_subcommand(1);
  CLI::App* stoch_run = stoch->add_subcommand("run", "Seeded sampled runs + deviation audit");
  stoch_run->add_option("--scenario", stoch_args.scenario_name, "Builtin name or JSON path")
      ->required();
  stoch_run->add_option("--target", stoch_args.target_name, "Named target override");
  stoch_run->add_option("--rounds", stoch_args.rounds, "Run length (0 = horizon)");
  stoch_run->add_option("--seeds", stoch_args.seeds, "Seed range a..b");
  stoch_run->add_option("--epsilon", stoch_args.eps, "Deviation epsilon");
  stoch_run->add_option("--horizon", stoch_args.horizon, "Audit start N (0 = computed)");
  stoch_run->add_option("--adversary", stoch_args.adversary,
                        "random | bestresponse | script:FILE");
  double h_eps = 0.1, h_gamma = 1.0;
  int h_dim = 2;
  CLI::App* stoch_h = stoch->add_subcommand("horizon", "Print the concentration horizon");
  stoch_h->add_option("--epsilon", h_eps, "Deviation epsilon");
  stoch_h->add_option("--gamma", h_gamma, "Payoff bound");
  stoch_h->add_option("--dim", h_dim, "Payoff dimension");

  std::string classify_scenario, classify_target;
  int classify_stages = 64, classify_grid = 0;
  CLI::App* classify = app.add_subcommand("classify", "Approachable / Avoidable / Undecided");
  classify->add_option("--scenario", classify_scenario, "Builtin name or JSON path")
      ->required();
  classify->add_option("--target", classify_target, "Named target override");
  classify->add_option("--stages", classify_stages, "Stage budget");
  classify->add_option("--grid", classify_grid, "Direction grid override");

  std::string show_name;
  CLI::App* scen = app.add_subcommand("scenario", "Registry of built-in experiments");
  scen->require_subcommand(1);
  scen->add_subcommand("list", "Print the builtin names");
  CLI::App* scen_show = scen->add_subcommand("show", "Print a scenario as JSON");
  scen_show->add_option("name", show_name, "Builtin name or JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sim->parsed()) return run_simulate(sim_args);
    if (peel->parsed()) return run_peel(peel_args);
    if (force->parsed()) return run_force(force_args);
    if (lp_cmd->parsed()) return run_lp_solve(lp_file);
    if (game_cmd->parsed())
      return run_game_value(game_file, game_scenario, game_lambda);
    if (stoch->parsed()) {
      if (stoch_run->parsed()) return run_stochastic_cmd(stoch_args);
      std::cout << json{{"epsilon", h_eps},
                        {"gamma", h_gamma},
                        {"d", h_dim},
                        {"horizon", stochastic::hoeffding_horizon(h_eps, h_gamma, h_dim)}}
                       .dump(2)
                << "\n";
      return 0;
    }
    if (classify->parsed())
      return run_classify(classify_scenario, classify_target, classify_stages, classify_grid);
    if (scen->parsed()) {
      if (scen_show->parsed()) {
        std::cout << scn::to_json(scn::load_scenario(show_name)) << "\n";
      } else {
        for (const std::string& name : scn::builtin_names()) std::cout << name << "\n";
      }
      return 0;
    }
  } catch (const blackwell::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
