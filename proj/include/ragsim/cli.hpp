// Copyright 2026 The ragsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ragsim/bounds.hpp"
#include "ragsim/coordination.hpp"
#include "ragsim/instances.hpp"
#include "ragsim/io.hpp"
#include "ragsim/scenario.hpp"
#include "ragsim/structure.hpp"
#include "ragsim/timing.hpp"
#include "ragsim/walkthrough.hpp"

namespace ragsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfigError = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  MissionConfig mission;
  std::vector<Algorithm> sweep_algorithm;
  std::vector<int> sweep_k;
  std::vector<int> sweep_n_agents;
  std::vector<double> sweep_data_rate_mbps;
  std::string output_dir = "ragsim_out";
  std::set<std::string> emit{"traces", "aggregates"};

  /// Cartesian product of the sweep lists in (algorithm, k, n_agents, rate)
  /// order; an empty list means "the mission's own value".
  std::vector<Variation> variations() const {
    auto algs = sweep_algorithm.empty() ? std::vector<Algorithm>{mission.algorithm} : sweep_algorithm;
    auto ks = sweep_k.empty() ? std::vector<int>{mission.k} : sweep_k;
    auto ns = sweep_n_agents.empty() ? std::vector<int>{mission.n_agents} : sweep_n_agents;
    auto rates = sweep_data_rate_mbps.empty() ? std::vector<double>{mission.delay.data_rate_mbps}
                                              : sweep_data_rate_mbps;
    std::vector<Variation> out;
    for (Algorithm a : algs)
      for (int k : ks)
        for (int n : ns)
          for (double r : rates) out.push_back({a, k, n, r});
    return out;
  }
};

inline const char* default_config_text() {
  return R"(// ragsim experiment configuration (JSON; // comments allowed).
// Every key is optional; the values below are the defaults.
{
  // Mission
  "n_agents": 15,
  "world_width": 192,             // cells
  "world_height": 192,
  "road_mask_path": "",           // '#'/'.' grid file; empty = random streets per trial
  "road_density": 0.25,           // fraction of road cells for random streets
  "corridor_width": 2,
  "fov_width": 13,                // cells
  "fov_height": 13,
  "move_cells": 6,                // length of each of the 8 compass moves
  "spawn_radius": 0,              // start square half-width around the depot
  "steps": 10,                    // replanning steps per trial
  "comm_range": 1e9,              // cells; limits nearest-neighbor links
  "k": 3,                         // neighbors per agent
  "algorithm": "rag",             // rag | sg | dfs-sg | dsm | random
  "dfs_extra_edges": 30,          // extra undirected edges of the dfs-sg mesh
  "validate_step_objective": true,
  "trials": 1,
  "seed": 1,

  // Delay model
  "tau_f": 0.001,                 // seconds per objective evaluation
  "message_kib": 25,              // action message size
  "data_rate_mbps": 0.25,         // sets tau_c = 8 * bytes / rate
  // "tau_c": 0.8192,             // explicit override, seconds
  // "tau_hash": 0.000256,        // default: one 64-bit scalar at the data rate

  // Sweep: lists override the single values above
  "sweep_algorithm": [],
  "sweep_k": [],
  "sweep_n_agents": [],
  "sweep_data_rate_mbps": [],

  // Output
  "output_dir": "ragsim_out",
  "emit": ["traces", "aggregates"]  // any of traces, aggregates, bounds, timings
}
)";
}

namespace detail {

template <typename T>
T get_field(const Json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("field '" + key + "': " + e.what());
  }
}

}  // namespace detail

/// Parses the flat JSON config. Relative paths are resolved against `base_dir`.
inline ExperimentConfig parse_config(const Json& j, const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  MissionConfig& m = c.mission;
  using detail::get_field;
  for (const auto& [key, value] : j.items()) {
    if (key == "n_agents") m.n_agents = get_field<int>(j, key);
    else if (key == "world_width") m.world_width = get_field<int>(j, key);
    else if (key == "world_height") m.world_height = get_field<int>(j, key);
    else if (key == "road_mask_path") {
      m.road_mask_path = get_field<std::string>(j, key);
      if (!m.road_mask_path.empty() && std::filesystem::path(m.road_mask_path).is_relative() && !base_dir.empty())
        m.road_mask_path = (base_dir / m.road_mask_path).string();
    }
    else if (key == "road_density") m.road_density = get_field<double>(j, key);
    else if (key == "corridor_width") m.corridor_width = get_field<int>(j, key);
    else if (key == "fov_width") m.fov_width = get_field<int>(j, key);
    else if (key == "fov_height") m.fov_height = get_field<int>(j, key);
    else if (key == "move_cells") m.move_cells = get_field<int>(j, key);
    else if (key == "spawn_radius") m.spawn_radius = get_field<int>(j, key);
    else if (key == "steps") m.steps = get_field<int>(j, key);
    else if (key == "comm_range") m.comm_range = get_field<double>(j, key);
    else if (key == "k") m.k = get_field<int>(j, key);
    else if (key == "algorithm") {
      try {
        m.algorithm = parse_algorithm(get_field<std::string>(j, key));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("field 'algorithm': " + std::string(e.what()));
      }
    }
    else if (key == "dfs_extra_edges") m.dfs_extra_edges = get_field<int>(j, key);
    else if (key == "validate_step_objective") m.validate_step_objective = get_field<bool>(j, key);
    else if (key == "trials") m.trials = get_field<int>(j, key);
    else if (key == "seed") m.seed = get_field<std::uint64_t>(j, key);
    else if (key == "tau_f") m.delay.tau_f = get_field<double>(j, key);
    else if (key == "tau_c") m.delay.tau_c = get_field<double>(j, key);
    else if (key == "tau_hash") m.delay.tau_hash = get_field<double>(j, key);
    else if (key == "message_kib") m.delay.message_kib = get_field<double>(j, key);
    else if (key == "data_rate_mbps") m.delay.data_rate_mbps = get_field<double>(j, key);
    else if (key == "sweep_algorithm") {
      c.sweep_algorithm.clear();
      for (const auto& name : get_field<std::vector<std::string>>(j, key)) {
        try {
          c.sweep_algorithm.push_back(parse_algorithm(name));
        } catch (const std::invalid_argument& e) {
          throw ConfigError("field 'sweep_algorithm': " + std::string(e.what()));
        }
      }
    }
    else if (key == "sweep_k") c.sweep_k = get_field<std::vector<int>>(j, key);
    else if (key == "sweep_n_agents") c.sweep_n_agents = get_field<std::vector<int>>(j, key);
    else if (key == "sweep_data_rate_mbps") c.sweep_data_rate_mbps = get_field<std::vector<double>>(j, key);
    else if (key == "output_dir") {
      c.output_dir = get_field<std::string>(j, key);
      if (std::filesystem::path(c.output_dir).is_relative() && !base_dir.empty())
        c.output_dir = (base_dir / c.output_dir).string();
    }
    else if (key == "emit") {
      auto list = get_field<std::vector<std::string>>(j, key);
      c.emit.clear();
      for (const auto& e : list) {
        if (e != "traces" && e != "aggregates" && e != "bounds" && e != "timings")
          throw ConfigError("field 'emit': unknown output '" + e + "'");
        c.emit.insert(e);
      }
    }
    else throw ConfigError("unknown field '" + key + "'");
  }
  try {
    for (const auto& v : c.variations()) v.apply(m).validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("delay model: ") + e.what());
  }
  return c;
}

inline ExperimentConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir = {}) {
  Json j;
  try {
    j = Json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(e.what());
  }
  return parse_config(j, base_dir);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  // Relative output and mask paths stay relative to the working directory.
  return parse_config_text(ss.str());
}

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

inline std::string variation_key(const Variation& v) {
  return std::string(to_string(v.algorithm)) + "," + std::to_string(v.k) + "," + std::to_string(v.n_agents) +
         "," + fmt(v.data_rate_mbps);
}

inline void ensure_writable(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("output_dir '" + dir.string() + "' cannot be created: " + ec.message());
  const auto probe = dir / ".ragsim_write_probe";
  {
    std::ofstream out(probe);
    if (!out || !(out << "ok") || !out.flush())
      throw ConfigError("output_dir '" + dir.string() + "' is not writable");
  }
  std::filesystem::remove(probe, ec);
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace detail

/// Step-0 bound report of one RAG trial, rebuilt from the trial's seed.
inline BoundReport mission_bound_report(const MissionConfig& cfg, int trial) {
  const RoadMask world = mission_world(cfg, trial);
  const std::vector<Cell> pos = mission_spawn(cfg, world, trial);
  auto f = GridCoverageObjective::from_poses(world, pos, compass_moves(cfg.move_cells), cfg.fov_width,
                                             cfg.fov_height);
  MeshGraph g = knn_graph(detail::to_points(pos), cfg.k, cfg.comm_range);
  return make_bound_report(f, g, run_rag(f, g));
}

inline int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err,
                   int workers = default_workers()) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
    detail::ensure_writable(cfg.output_dir);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  const auto variations = cfg.variations();
  std::vector<VariationResult> results;
  try {
    results = monte_carlo(cfg.mission, variations, workers);
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << "\n";
    return kExitConfigError;
  }

  std::ostringstream traces, aggregates, timings, bounds;
  traces << "trial,algorithm,k,step,covered_cells,step_sim_time_s,gain_rounds,action_rounds,max_evals,"
            "n_agents,data_rate_mbps\n";
  aggregates << "algorithm,k,n_agents,data_rate_mbps,trials,peak_coverage_mean,peak_coverage_std,"
                "step_time_mean_s,step_time_std_s\n";
  timings << "algorithm,k,n_agents,data_rate_mbps,trial,step,compute_s,gain_s,action_s,total_s\n";
  bounds << "algorithm,k,n_agents,data_rate_mbps,trial,certified,algorithm_value,optimum_value,kappa,"
            "coin_sum,apriori,aposteriori,apriori_decentralized_floor\n";
  Json summary;
  summary["config"] = config_path;
  summary["trials"] = cfg.mission.trials;
  summary["steps"] = cfg.mission.steps;
  Json vars = Json::array();
  for (const auto& r : results) {
    const Variation& v = r.variation;
    const std::string key = detail::variation_key(v);
    for (const auto& tr : r.trials)
      for (const auto& s : tr.steps) {
        traces << tr.trial << ',' << to_string(v.algorithm) << ',' << v.k << ',' << s.step << ','
               << s.covered_cells << ',' << detail::fmt(s.sim_time_s) << ',' << s.gain_rounds << ','
               << s.action_rounds << ',' << s.max_evals << ',' << v.n_agents << ','
               << detail::fmt(v.data_rate_mbps) << '\n';
        timings << key << ',' << tr.trial << ',' << s.step << ',' << detail::fmt(s.compute_s) << ','
                << detail::fmt(s.gain_s) << ',' << detail::fmt(s.action_s) << ',' << detail::fmt(s.sim_time_s)
                << '\n';
      }
    aggregates << key << ',' << r.trials.size() << ',' << detail::fmt(r.peak_coverage.mean) << ','
               << detail::fmt(r.peak_coverage.stddev) << ',' << detail::fmt(r.mean_step_time.mean) << ','
               << detail::fmt(r.mean_step_time.stddev) << '\n';
    if (cfg.emit.count("bounds") && v.algorithm == Algorithm::kRag && cfg.mission.steps > 0)
      for (int t = 0; t < cfg.mission.trials; ++t) {
        BoundReport b;
        try {
          b = mission_bound_report(v.apply(cfg.mission), t);
        } catch (const std::domain_error&) {
          // Some action sees no unseen road: curvature, hence every bound, is undefined.
          bounds << key << ',' << t << ",0,,,nan,,,,\n";
          continue;
        }
        bounds << key << ',' << t << ',' << (b.certified ? 1 : 0) << ',' << detail::fmt(b.algorithm_value) << ','
               << detail::fmt(b.optimum_value) << ',' << detail::fmt(b.kappa) << ',' << detail::fmt(b.coin_sum)
               << ',' << detail::fmt(b.apriori) << ',' << detail::fmt(b.aposteriori) << ','
               << detail::fmt(b.apriori_decentralized_floor) << '\n';
      }

    Json jv{{"algorithm", std::string(to_string(v.algorithm))},
            {"k", v.k},
            {"n_agents", v.n_agents},
            {"data_rate_mbps", v.data_rate_mbps},
            {"peak_coverage", to_json(r.peak_coverage)},
            {"step_time_s", to_json(r.mean_step_time)}};
    Json cov = Json::array(), tim = Json::array();
    for (const auto& m : r.coverage_by_step) cov.push_back(to_json(m));
    for (const auto& m : r.time_by_step) tim.push_back(to_json(m));
    jv["coverage_by_step"] = std::move(cov);
    jv["time_by_step_s"] = std::move(tim);
    vars.push_back(std::move(jv));

    out << to_string(v.algorithm) << " k=" << v.k << " n=" << v.n_agents << " rate=" << v.data_rate_mbps
        << "Mbps: peak coverage " << std::fixed << std::setprecision(1) << r.peak_coverage.mean << " +/- "
        << r.peak_coverage.stddev << ", step time " << std::setprecision(4) << r.mean_step_time.mean << " s\n"
        << std::defaultfloat;
  }
  summary["variations"] = std::move(vars);

  const std::filesystem::path dir(cfg.output_dir);
  try {
    if (cfg.emit.count("traces")) detail::write_file(dir / "traces.csv", traces.str());
    if (cfg.emit.count("aggregates")) detail::write_file(dir / "aggregates.csv", aggregates.str());
    if (cfg.emit.count("timings")) detail::write_file(dir / "timings.csv", timings.str());
    if (cfg.emit.count("bounds")) detail::write_file(dir / "bounds.csv", bounds.str());
    detail::write_file(dir / "summary.json", summary.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}

struct VerifyOptions {
  std::uint64_t seed = 1;
  int count = 100;
  int max_agents = 5;
  int max_actions = 3;
  /// Negative control: invert the commit comparison.
  bool corrupt_tie_break = false;
};

struct PropertyTally {
  std::string name;
  long long checked = 0;
  long long violations = 0;
  std::string first_violation;

  void record(bool ok, const std::string& detail = {}) {
    ++checked;
    if (!ok) {
      if (violations == 0) first_violation = detail;
      ++violations;
    }
  }
  bool passed() const { return violations == 0; }
};

struct VerifyReport {
  std::vector<PropertyTally> properties;
  bool all_passed() const {
    return std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.passed(); });
  }
  const PropertyTally* find(const std::string& name) const {
    for (const auto& p : properties)
      if (p.name == name) return &p;
    return nullptr;
  }
};

namespace detail {

// Monotone but generally not submodular: (covered items)^1.5 on a small coverage base.
inline FunctionObjective power_coverage(const CoverageObjective& base) {
  return FunctionObjective(base.action_counts(), [&base](std::span<const GroundElement> s) {
    return std::pow(static_cast<double>(base.covered_items(s).size()), 1.5);
  });
}

}  // namespace detail

inline VerifyReport run_verification(const VerifyOptions& opt) {
  constexpr double tol = 1e-9;
  std::map<std::string, PropertyTally> t;
  const std::vector<std::string> names = {
      "walkthrough-line-rag", "walkthrough-star-rag", "walkthrough-line-sg", "walkthrough-star-sg", "apriori-bound", "aposteriori-bound",
      "approx-greedy-eta1-matches-apriori", "approx-greedy-eta-half", "curvature-ratio", "total-curvature-ratio", "coin-properties",
      "eval-cap", "eval-accounting", "round-cap", "closed-form-time-bound", "rag-time-envelope", "sg-half-optimal"};
  for (const auto& n : names) t[n].name = n;

  const CommitRule rule = opt.corrupt_tie_break ? CommitRule::kLeastGain : CommitRule::kGreatestGain;
  const DelayModel unit = DelayModel::explicit_delays(1, 1, 1);
  for (const auto& c : {walkthrough_line(), walkthrough_star()}) {
    auto r = run_walkthrough(c, unit, rule);
    const double v = c.actions_per_agent;
    const bool rag_ok = r.selectors_match && r.rag_time.compute_units == 2 * c.actions_per_agent &&
                        r.rag_time.gain_units == 1 && r.rag_time.action_units == 1;
    const long long expected_relays = c.graph_name == "line" ? 10 : 17;
    const bool sg_ok = r.sg_time.compute_units == 5 * c.actions_per_agent &&
                       r.sg_time.action_units == expected_relays && r.sg_time.gain_units == 0;
    t["walkthrough-" + c.graph_name + "-rag"].record(
        rag_ok, std::string("commit sequence ") + (r.selectors_match ? "matches" : "differs") + ", total " +
                    detail::fmt(r.rag_time.total()) + " expected " + detail::fmt(2 * v + 2));
    t["walkthrough-" + c.graph_name + "-sg"].record(sg_ok, "sg relays " + std::to_string(r.sg_time.action_units));
  }

  std::mt19937_64 rng(opt.seed);
  for (int inst = 0; inst < opt.count; ++inst) {
    SmallInstance s = random_small_instance(rng, opt.max_agents, opt.max_actions);
    const auto& f = s.objective;
    const auto& g = s.graph;
    const int n = f.num_agents();
    const std::string tag = "instance " + std::to_string(inst) + " (" + to_string(s.family) + ", n=" +
                            std::to_string(n) + ")";

    const std::uint64_t before = f.evaluations();
    RagOptions ropt;
    ropt.commit_rule = rule;
    CoordinationOutcome rag = run_rag(f, g, ropt);
    std::uint64_t expected_evals = 1;
    for (int i = 0; i < n; ++i) expected_evals += rag.eval_counts[i] + rag.context_evals[i];
    t["eval-accounting"].record(f.evaluations() - before == expected_evals, tag);

    const double opt_value = brute_force_optimum(f).value;
    const double kappa = curvature(f);
    const double coins = coin_sum(f, g, rag.actions);
    const double apriori_rhs_value = apriori_rhs(opt_value, kappa, coins);
    t["apriori-bound"].record(rag.value + tol >= apriori_rhs_value, tag);
    t["aposteriori-bound"].record(rag.value + tol >= aposteriori_rhs(opt_value, kappa, committed_gain_sum(f, rag)),
                                 tag);
    t["approx-greedy-eta1-matches-apriori"].record(std::abs(approx_greedy_rhs(opt_value, kappa, coins, 1.0) - apriori_rhs_value) <=
                                          1e-12 * std::max(1.0, std::abs(apriori_rhs_value)),
                                      tag);
    RagOptions half = ropt;
    half.eta = 0.5;
    half.seed = rng();
    CoordinationOutcome approx = run_rag(f, g, half);
    t["approx-greedy-eta-half"].record(
        approx.value + tol >= approx_greedy_rhs(opt_value, kappa, coin_sum(f, g, approx.actions), 0.5), tag);
    t["curvature-ratio"].record(rag.value + tol >= curvature_ratio(kappa, g.is_complete(), false) * opt_value, tag);

    for (int i = 0; i < n; ++i) {
      std::vector<int> all, none;
      for (int j = 0; j < n; ++j)
        if (j != i) all.push_back(j);
      const GroundElement own[] = {rag.actions[i]};
      const double fi = f.evaluate(own);
      bool ok = std::abs(coin(f, i, rag.actions, all)) <= tol && coin(f, i, rag.actions, none) <= kappa * fi + tol;
      std::vector<int> b1, b12;
      for (int j : all) {
        const int pick = std::uniform_int_distribution<int>(0, 2)(rng);
        if (pick == 0) b1.push_back(j);
        if (pick <= 1) b12.push_back(j);
      }
      ok = ok && coin(f, i, rag.actions, b12) <= coin(f, i, rag.actions, b1) + tol;
      t["coin-properties"].record(ok, tag + " agent " + std::to_string(i));

      const std::uint64_t cap = static_cast<std::uint64_t>(f.num_actions(i)) *
                                (std::max<std::size_t>(1, g.in(i).size()) + 1);
      t["eval-cap"].record(rag.eval_counts[i] <= cap, tag + " agent " + std::to_string(i));
    }
    t["round-cap"].record(rag.gain_rounds <= std::max(0, n - 1) && rag.action_rounds <= std::max(0, n - 1), tag);

    std::uniform_real_distribution<double> delay(0.0, 1.0);
    const DelayModel dm = DelayModel::explicit_delays(delay(rng), delay(rng), delay(rng));
    const double sim = rag_decision_time(rag, dm, f.action_counts());
    t["closed-form-time-bound"].record(sim <= rag_time_bound(g, dm, f.action_counts()) + tol,
                                tag + ": simulated " + detail::fmt(sim) + " > bound " +
                                    detail::fmt(rag_time_bound(g, dm, f.action_counts())));
    t["rag-time-envelope"].record(sim <= rag_time_envelope(g, dm, f.action_counts()) + tol, tag);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    t["sg-half-optimal"].record(run_sg(f, order).value + tol >= 0.5 * opt_value, tag);

    if (f.ground_size() <= 12) {
      FunctionObjective h = detail::power_coverage(f);
      StructureReport rep = validate_structure(h);
      if (rep.monotone && rep.c_total && *rep.c_total < 1) {
        const double h_opt = brute_force_optimum(h).value;
        const double h_rag = run_rag(h, g, ropt).value;
        const double ratio = rep.submodular && rep.kappa ? curvature_ratio(*rep.kappa, g.is_complete(), false)
                                                         : curvature_ratio(*rep.c_total, g.is_complete(), true);
        t["total-curvature-ratio"].record(h_rag + tol >= ratio * h_opt, tag);
      }
    }
  }

  VerifyReport report;
  for (const auto& n : names) report.properties.push_back(t[n]);
  return report;
}

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  if (opt.count < 0 || opt.max_agents < 1 || opt.max_actions < 1)
    throw ConfigError("verify: count >= 0, max-agents >= 1 and max-actions >= 1 required");
  double product = std::pow(static_cast<double>(opt.max_actions), opt.max_agents);
  if (product > kMaxBruteForceProduct || opt.max_agents * opt.max_actions > kMaxExhaustiveGround)
    throw ConfigError("verify: instance size exceeds the brute-force guards");
  if (opt.count == 0) out << "warning: count=0, random-instance properties pass vacuously\n";
  VerifyReport r = run_verification(opt);
  for (const auto& p : r.properties) {
    out << (p.passed() ? "PASS " : "FAIL ") << p.name << " checked=" << p.checked << " violations=" << p.violations;
    if (!p.passed()) out << " first: " << p.first_violation;
    out << "\n";
  }
  return r.all_passed() ? kExitOk : kExitViolation;
}

/// Writes walkthrough_timings.csv and ring_bound.csv into `out_dir`.
inline int cmd_figures(const std::string& out_dir, std::ostream& out, std::ostream& err,
                       int actions_per_agent = 8, double sensing_radius = 1.0) {
  try {
    detail::ensure_writable(out_dir);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  const DelayModel dm = DelayModel::from_rate(25 * kBytesPerKiB, 0.25 * kBpsPerMbps, 1e-3);
  std::ostringstream table;
  table << "algorithm,graph,tau_f_vi_coeff,tau_c_coeff,tau_hash_coeff,actions_per_agent,tau_f_s,tau_c_s,tau_hash_s,"
          "total_s\n";
  for (const auto& c : {walkthrough_line(actions_per_agent), walkthrough_star(actions_per_agent)}) {
    auto r = run_walkthrough(c, dm);
    for (const auto& [name, tb] : {std::pair{"rag", r.rag_time}, std::pair{"sg", r.sg_time}})
      table << name << ',' << c.graph_name << ',' << tb.compute_units / actions_per_agent << ','
           << tb.action_units << ',' << tb.gain_units << ',' << actions_per_agent << ',' << detail::fmt(dm.tau_f)
           << ',' << detail::fmt(dm.tau_c) << ',' << detail::fmt(dm.tau_hash) << ',' << detail::fmt(tb.total())
           << '\n';
  }
  std::ostringstream ring;
  ring << "r_s,r_i,bound\n";
  constexpr int kSamples = 60, kPerRadius = 20;
  for (int i = 0; i <= kSamples; ++i) {
    const double r_i = sensing_radius * i / kPerRadius;
    ring << detail::fmt(sensing_radius) << ',' << detail::fmt(r_i) << ','
         << detail::fmt(coin_ring_bound(sensing_radius, r_i)) << '\n';
  }
  try {
    detail::write_file(std::filesystem::path(out_dir) / "walkthrough_timings.csv", table.str());
    detail::write_file(std::filesystem::path(out_dir) / "ring_bound.csv", ring.str());
  } catch (const std::exception& e) {
    err << "output error: " << e.what() << "\n";
    return kExitConfigError;
  }
  out << "wrote walkthrough_timings.csv and ring_bound.csv to " << out_dir << "\n";
  return kExitOk;
}

}  // namespace ragsim
