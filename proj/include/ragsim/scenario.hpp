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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ragsim/coordination.hpp"
#include "ragsim/grid.hpp"
#include "ragsim/structure.hpp"
#include "ragsim/timing.hpp"
#include "ragsim/topology.hpp"

namespace ragsim {

struct DelayConfig {
  double tau_f = 1e-3;
  /// Explicit tau_c in seconds; when absent it is derived from the rate.
  std::optional<double> tau_c;
  /// Explicit tau_hash; when absent, one 64-bit scalar at the data rate.
  std::optional<double> tau_hash;
  double message_kib = 25;
  double data_rate_mbps = 0.25;

  DelayModel model() const {
    if (tau_c) return DelayModel::explicit_delays(tau_f, *tau_c, tau_hash.value_or(0.0));
    return DelayModel::from_rate(message_kib * kBytesPerKiB, data_rate_mbps * kBpsPerMbps, tau_f,
                                 tau_hash.value_or(-1.0));
  }
};

struct MissionConfig {
  int n_agents = 15;
  int world_width = 192;
  int world_height = 192;
  /// Road mask file; when empty a random street grid is generated per trial.
  std::string road_mask_path;
  double road_density = 0.25;
  int corridor_width = 2;
  int fov_width = 13;
  int fov_height = 13;
  int move_cells = 6;
  /// Agents start uniformly in a square of this half-width around a random
  /// depot cell; 0 launches the whole team from the depot itself.
  int spawn_radius = 0;
  int steps = 10;
  double comm_range = 1e9;
  int k = 3;
  Algorithm algorithm = Algorithm::kRag;
  /// Extra random undirected edges on top of the DFS-SG line graph.
  int dfs_extra_edges = 30;
  DelayConfig delay;
  int trials = 1;
  std::uint64_t seed = 1;
  /// Check normalization, monotonicity and submodularity on a shrunk copy of
  /// the first step's objective.
  bool validate_step_objective = true;

  void validate() const {
    auto need = [](bool ok, const char* what) {
      if (!ok) throw std::invalid_argument(std::string("mission config: ") + what);
    };
    need(n_agents >= 1, "n_agents must be >= 1");
    need(world_width >= 1 && world_height >= 1, "world must be non-empty");
    need(road_density >= 0 && road_density <= 1, "road_density must be in [0,1]");
    need(corridor_width >= 1, "corridor_width must be >= 1");
    need(fov_width >= 1 && fov_height >= 1, "fov must be non-empty");
    need(road_mask_path.empty() ? fov_width <= world_width && fov_height <= world_height : true,
         "fov must fit in the world");
    need(move_cells >= 1, "move_cells must be >= 1");
    need(spawn_radius >= 0, "spawn_radius must be >= 0");
    need(steps >= 0, "steps must be >= 0");
    need(comm_range >= 0, "comm_range must be >= 0");
    need(k >= 0, "k must be >= 0");
    need(dfs_extra_edges >= 0, "dfs_extra_edges must be >= 0");
    need(trials >= 1, "trials must be >= 1");
    need(algorithm != Algorithm::kOptimal, "algorithm 'optimal' is not a mission algorithm");
    delay.model();
  }
};

struct StepRecord {
  int step = 0;
  int covered_cells = 0;  // cumulative road cells seen so far
  double sim_time_s = 0;
  double compute_s = 0;
  double gain_s = 0;
  double action_s = 0;
  int gain_rounds = 0;
  int action_rounds = 0;
  std::uint64_t max_evals = 0;
};

struct MissionTrace {
  int trial = 0;
  std::vector<StepRecord> steps;
  int road_cells = 0;

  int peak_coverage() const { return steps.empty() ? 0 : steps.back().covered_cells; }
  double mean_step_time() const {
    if (steps.empty()) return 0;
    double s = 0;
    for (const auto& r : steps) s += r.sim_time_s;
    return s / static_cast<double>(steps.size());
  }
};

/// Independent, reproducible streams derived from (base seed, trial, salt).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t trial, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(salt)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

namespace detail {

enum Salt : std::uint64_t { kWorldSalt = 1, kSpawnSalt = 2, kOrderSalt = 3, kDfsSalt = 4, kRandomSalt = 5 };

inline std::vector<Cell> spawn_positions(const MissionConfig& cfg, const RoadMask& world, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Cell center{std::uniform_int_distribution<int>(0, world.width() - 1)(rng),
              std::uniform_int_distribution<int>(0, world.height() - 1)(rng)};
  std::uniform_int_distribution<int> offset(-cfg.spawn_radius, cfg.spawn_radius);
  std::vector<Cell> out;
  for (int i = 0; i < cfg.n_agents; ++i)
    out.push_back(clamp_to_grid(world, {center.x + offset(rng), center.y + offset(rng)}));
  return out;
}

inline std::vector<Point> to_points(const std::vector<Cell>& cells) {
  std::vector<Point> out;
  for (Cell c : cells) out.push_back({static_cast<double>(c.x), static_cast<double>(c.y)});
  return out;
}

// Information DAG for the DSM rule: agents decide in id order, each seeing
// its in-neighbors that decided earlier.
inline InfoDag knn_dag(const MeshGraph& g) {
  InfoDag dag;
  for (int i = 0; i < g.size(); ++i) {
    dag.order.push_back(i);
    std::vector<int> acc;
    for (int j : g.in(i))
      if (j < i) acc.push_back(j);
    dag.access.push_back(std::move(acc));
  }
  return dag;
}

inline void check_step_structure(const RoadMask& mask,
                                 const std::vector<Cell>& positions, const MissionConfig& cfg) {
  const int agents = std::min<int>(3, static_cast<int>(positions.size()));
  std::vector<Cell> moves = compass_moves(cfg.move_cells);
  moves.resize(4);
  std::vector<Cell> few(positions.begin(), positions.begin() + agents);
  auto small = GridCoverageObjective::from_poses(mask, few, moves, cfg.fov_width, cfg.fov_height);
  StructureReport r = validate_structure(small);
  if (!r.normalized || !r.monotone || !r.submodular)
    throw std::logic_error("step objective failed the structural check");
}

}  // namespace detail

inline RoadMask mission_world(const MissionConfig& cfg, int trial) {
  if (!cfg.road_mask_path.empty()) return load_road_mask(cfg.road_mask_path);
  return random_road_mask(cfg.world_width, cfg.world_height, cfg.road_density, cfg.corridor_width,
                          derive_seed(cfg.seed, trial, detail::kWorldSalt));
}

/// Initial positions of one trial; depends only on (seed, trial, n_agents,
/// world), so every variation of a sweep starts from the same layout.
inline std::vector<Cell> mission_spawn(const MissionConfig& cfg, const RoadMask& world, int trial) {
  return detail::spawn_positions(cfg, world, derive_seed(cfg.seed, trial, detail::kSpawnSalt));
}

/// One coverage mission: self-configure, coordinate, move, record.
inline MissionTrace run_mission(const MissionConfig& cfg, int trial = 0) {
  cfg.validate();
  const RoadMask world = mission_world(cfg, trial);
  if (cfg.fov_width > world.width() || cfg.fov_height > world.height())
    throw std::invalid_argument("mission config: fov must fit in the world");
  const DelayModel dm = cfg.delay.model();
  const std::vector<Cell> moves = compass_moves(cfg.move_cells);
  const std::vector<int> counts(cfg.n_agents, static_cast<int>(moves.size()));
  std::vector<Cell> pos = mission_spawn(cfg, world, trial);

  std::vector<int> order(cfg.n_agents);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 order_rng(derive_seed(cfg.seed, trial, detail::kOrderSalt));
  std::shuffle(order.begin(), order.end(), order_rng);
  std::optional<MeshGraph> dfs_graph;
  int dfs_start = 0;
  if (cfg.algorithm == Algorithm::kDfsSg) {
    const std::uint64_t s = derive_seed(cfg.seed, trial, detail::kDfsSalt);
    const long long room = static_cast<long long>(cfg.n_agents) * (cfg.n_agents - 1) / 2 - (cfg.n_agents - 1);
    dfs_graph = strongly_connected_line_plus(order, static_cast<int>(std::min<long long>(cfg.dfs_extra_edges, room)), s);
    dfs_start = std::uniform_int_distribution<int>(0, cfg.n_agents - 1)(order_rng);
  }

  MissionTrace trace;
  trace.trial = trial;
  trace.road_cells = world.road_count();
  RoadMask unseen = world;
  int covered = 0;
  for (int step = 0; step < cfg.steps; ++step) {
    auto f = GridCoverageObjective::from_poses(unseen, pos, moves, cfg.fov_width, cfg.fov_height);
    if (step == 0 && cfg.validate_step_objective) detail::check_step_structure(unseen, pos, cfg);

    StepRecord rec;
    rec.step = step;
    CoordinationOutcome out;
    TimeBreakdown tb;
    switch (cfg.algorithm) {
      case Algorithm::kRag: {
        MeshGraph g = knn_graph(detail::to_points(pos), cfg.k, cfg.comm_range);
        out = run_rag(f, g);
        tb = rag_time_breakdown(out, dm, counts);
        break;
      }
      case Algorithm::kSg:
        out = run_sg(f, order);
        tb = sg_time_breakdown(out, dm, counts);
        break;
      case Algorithm::kDfsSg:
        out = run_dfs_sg(f, *dfs_graph, dfs_start);
        tb = sg_time_breakdown(out, dm, counts);
        break;
      case Algorithm::kDsm: {
        MeshGraph g = knn_graph(detail::to_points(pos), cfg.k, cfg.comm_range);
        out = run_dsm(f, detail::knn_dag(g));
        // Value-level rule: only the sequential compute is charged.
        tb.compute_units = std::accumulate(counts.begin(), counts.end(), 0LL);
        tb.compute_s = dm.tau_f * static_cast<double>(tb.compute_units);
        break;
      }
      case Algorithm::kRandom:
        out = run_random(f, derive_seed(cfg.seed, trial, detail::kRandomSalt + 16 * static_cast<std::uint64_t>(step)));
        break;
      case Algorithm::kOptimal:
        throw std::invalid_argument("optimal is not a mission algorithm");
    }

    for (int cell : f.covered_items(out.actions)) {
      unseen.set(cell, false);
      ++covered;
    }
    for (int i = 0; i < cfg.n_agents; ++i) {
      Cell m = moves[out.actions[i].action];
      pos[i] = clamp_to_grid(world, {pos[i].x + m.x, pos[i].y + m.y});
    }
    rec.covered_cells = covered;
    rec.sim_time_s = tb.total();
    rec.compute_s = tb.compute_s;
    rec.gain_s = tb.gain_s;
    rec.action_s = tb.action_s;
    rec.gain_rounds = out.gain_rounds;
    rec.action_rounds = out.action_rounds;
    rec.max_evals = out.max_evals();
    trace.steps.push_back(rec);
  }
  return trace;
}

struct Variation {
  Algorithm algorithm = Algorithm::kRag;
  int k = 3;
  int n_agents = 15;
  double data_rate_mbps = 0.25;

  MissionConfig apply(MissionConfig cfg) const {
    cfg.algorithm = algorithm;
    cfg.k = k;
    cfg.n_agents = n_agents;
    cfg.delay.data_rate_mbps = data_rate_mbps;
    return cfg;
  }
};

struct MeanStd {
  double mean = 0;
  double stddev = 0;  // sample standard deviation; 0 for a single trial
};

inline MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd r;
  if (xs.empty()) return r;
  r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return r;
}

struct VariationResult {
  Variation variation;
  std::vector<MissionTrace> trials;
  std::vector<MeanStd> coverage_by_step;
  std::vector<MeanStd> time_by_step;
  MeanStd peak_coverage;
  MeanStd mean_step_time;
};

/// Worker count from RAGSIM_WORKERS, else the hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("RAGSIM_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(0..count-1) on a bounded pool; the first exception is rethrown.
template <typename Fn>
void parallel_for(int count, int workers, Fn&& fn) {
  workers = std::max(1, std::min(workers, count));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    for (int i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Every variation over cfg.trials paired trials. Results are stored by
/// (variation, trial) index, so output order is independent of scheduling.
inline std::vector<VariationResult> monte_carlo(const MissionConfig& cfg, const std::vector<Variation>& variations,
                                                int workers = default_workers()) {
  if (cfg.trials < 1) throw std::invalid_argument("monte_carlo: trials must be >= 1");
  std::vector<VariationResult> results(variations.size());
  for (std::size_t v = 0; v < variations.size(); ++v) {
    results[v].variation = variations[v];
    results[v].trials.resize(cfg.trials);
    variations[v].apply(cfg).validate();
  }
  const int total = static_cast<int>(variations.size()) * cfg.trials;
  parallel_for(total, workers, [&](int job) {
    const int v = job / cfg.trials, t = job % cfg.trials;
    results[v].trials[t] = run_mission(variations[v].apply(cfg), t);
  });
  for (auto& r : results) {
    std::vector<double> peaks, times;
    for (const auto& tr : r.trials) {
      peaks.push_back(tr.peak_coverage());
      times.push_back(tr.mean_step_time());
    }
    r.peak_coverage = mean_std(peaks);
    r.mean_step_time = mean_std(times);
    for (int s = 0; s < cfg.steps; ++s) {
      std::vector<double> cov, tim;
      for (const auto& tr : r.trials) {
        cov.push_back(tr.steps[s].covered_cells);
        tim.push_back(tr.steps[s].sim_time_s);
      }
      r.coverage_by_step.push_back(mean_std(cov));
      r.time_by_step.push_back(mean_std(tim));
    }
  }
  return results;
}

}  // namespace ragsim
