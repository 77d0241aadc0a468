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
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ragsim/objective.hpp"
#include "ragsim/topology.hpp"

namespace ragsim {

enum class Algorithm { kRag, kSg, kDfsSg, kDsm, kRandom, kOptimal };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kRag: return "rag";
    case Algorithm::kSg: return "sg";
    case Algorithm::kDfsSg: return "dfs-sg";
    case Algorithm::kDsm: return "dsm";
    case Algorithm::kRandom: return "random";
    case Algorithm::kOptimal: return "optimal";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kRag, Algorithm::kSg, Algorithm::kDfsSg, Algorithm::kDsm,
                      Algorithm::kRandom, Algorithm::kOptimal})
    if (to_string(a) == name) return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

/// Which gain wins the neighborhood comparison. kLeastGain inverts the
/// comparison and exists only as a negative control for the verifier.
enum class CommitRule { kGreatestGain, kLeastGain };

struct RagOptions {
  /// Local action selection keeps any action whose gain is >= eta * best gain,
  /// chosen uniformly with `seed`. eta = 1 is exact greedy with ties to the
  /// lowest action id.
  double eta = 1.0;
  std::uint64_t seed = 0;
  CommitRule commit_rule = CommitRule::kGreatestGain;
};

struct IterationEvent {
  int iteration = 0;
  std::vector<int> recomputed;
  bool gains_exchanged = false;
  std::vector<int> selectors;
  bool broadcast_occurred = false;
};

struct CoordinationOutcome {
  Algorithm algorithm = Algorithm::kRag;
  ElementSet actions;  // actions[i] is agent i's selection
  double value = 0;
  /// RAG: 1-based iteration in which the agent committed. SG family: 1-based
  /// position in the decision order.
  std::vector<int> selection_order;
  std::vector<IterationEvent> events;
  /// Marginal-gain queries f(a | context) issued by each agent.
  std::vector<std::uint64_t> eval_counts;
  /// Re-evaluations of each agent's own context value f(context).
  std::vector<std::uint64_t> context_evals;
  /// Neighbors whose actions the agent held when it committed (RAG's I_i;
  /// the visible predecessors for the SG family).
  std::vector<std::vector<int>> committed_neighbors;
  /// Marginal gain of the committed action given committed_neighbors.
  std::vector<double> committed_gains;
  std::vector<int> order;  // SG family decision order
  int gain_rounds = 0;
  int action_rounds = 0;
  long long relay_action_transmissions = 0;

  int num_agents() const { return static_cast<int>(actions.size()); }
  int iterations() const { return static_cast<int>(events.size()); }
  std::uint64_t max_evals() const {
    return eval_counts.empty() ? 0 : *std::max_element(eval_counts.begin(), eval_counts.end());
  }
};

namespace detail {

struct LocalChoice {
  int action = 0;
  double gain = 0;
  double value = 0;  // f(context + chosen action)
};

// Local greedy step: scan every action of `agent` against `context`.
inline LocalChoice local_greedy(const Objective& f, int agent, const ElementSet& context,
                                double context_value, double eta, std::mt19937_64& rng,
                                std::uint64_t& evals) {
  const int count = f.num_actions(agent);
  std::vector<double> values(count);
  ElementSet with = context;
  with.push_back({agent, 0});
  for (int a = 0; a < count; ++a) {
    with.back().action = a;
    values[a] = f.evaluate(with);
    ++evals;
  }
  int best = 0;
  for (int a = 1; a < count; ++a)
    if (values[a] > values[best]) best = a;
  if (eta < 1.0) {
    const double best_gain = values[best] - context_value;
    std::vector<int> ok;
    for (int a = 0; a < count; ++a)
      if (values[a] - context_value >= eta * best_gain) ok.push_back(a);
    best = ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
  }
  return {best, values[best] - context_value, values[best]};
}

inline void check_actions(const Objective& f) {
  for (int i = 0; i < f.num_agents(); ++i)
    if (f.num_actions(i) < 1)
      throw std::domain_error("agent " + std::to_string(i) + " has no available action");
}

inline CoordinationOutcome blank_outcome(Algorithm alg, int n) {
  CoordinationOutcome out;
  out.algorithm = alg;
  out.actions.assign(n, GroundElement{});
  out.selection_order.assign(n, 0);
  out.eval_counts.assign(n, 0);
  out.context_evals.assign(n, 0);
  out.committed_neighbors.assign(n, {});
  out.committed_gains.assign(n, 0.0);
  return out;
}

}  // namespace detail

/// Resource-aware distributed greedy, simulated in synchronous iterations.
///
/// Each iteration: undecided agents whose context changed rerun the local
/// greedy; agents with undecided in-neighbors exchange gains (one scalar
/// round); an agent commits iff its (gain, -id) beats that of every undecided
/// in-neighbor; committers broadcast their action (one action round, charged
/// only if some out-neighbor is still undecided); the others fold the newly
/// committed neighbors into their context.
inline CoordinationOutcome run_rag(const Objective& f, const MeshGraph& g, const RagOptions& opt = {}) {
  detail::check_actions(f);
  const int n = f.num_agents();
  if (g.size() != n) throw std::invalid_argument("run_rag: graph and objective disagree on agent count");
  if (!(opt.eta > 0 && opt.eta <= 1)) throw std::domain_error("run_rag: eta must be in (0, 1]");

  CoordinationOutcome out = detail::blank_outcome(Algorithm::kRag, n);
  std::mt19937_64 rng(opt.seed);
  std::vector<char> decided(n, 0), dirty(n, 1);
  std::vector<ElementSet> context(n);
  std::vector<std::vector<int>> informed(n);  // I_i
  std::vector<double> context_value(n, 0.0);
  std::vector<detail::LocalChoice> cand(n);

  auto beats = [&](int i, int j) {
    if (cand[i].gain != cand[j].gain)
      return opt.commit_rule == CommitRule::kGreatestGain ? cand[i].gain > cand[j].gain
                                                          : cand[i].gain < cand[j].gain;
    return i < j;
  };

  int remaining = n;
  while (remaining > 0) {
    IterationEvent ev;
    ev.iteration = out.iterations() + 1;

    for (int i = 0; i < n; ++i) {
      if (decided[i] || !dirty[i]) continue;
      if (!context[i].empty()) {
        context_value[i] = f.evaluate(context[i]);
        ++out.context_evals[i];
      }
      cand[i] = detail::local_greedy(f, i, context[i], context_value[i], opt.eta, rng, out.eval_counts[i]);
      dirty[i] = 0;
      ev.recomputed.push_back(i);
    }

    for (int i = 0; i < n && !ev.gains_exchanged; ++i) {
      if (decided[i]) continue;
      for (int j : g.in(i))
        if (!decided[j]) {
          ev.gains_exchanged = true;
          break;
        }
    }

    for (int i = 0; i < n; ++i) {
      if (decided[i]) continue;
      bool wins = true;
      for (int j : g.in(i))
        if (!decided[j] && !beats(i, j)) {
          wins = false;
          break;
        }
      if (wins) ev.selectors.push_back(i);
    }
    if (ev.selectors.empty()) throw std::logic_error("run_rag: iteration without a selector");

    for (int s : ev.selectors) {
      decided[s] = 1;
      out.actions[s] = {s, cand[s].action};
      out.selection_order[s] = ev.iteration;
      out.committed_neighbors[s] = informed[s];
      out.committed_gains[s] = cand[s].gain;
    }
    remaining -= static_cast<int>(ev.selectors.size());

    for (int s : ev.selectors)
      for (int j : g.out(s))
        if (!decided[j]) ev.broadcast_occurred = true;

    for (int i = 0; i < n; ++i) {
      if (decided[i]) continue;
      for (int s : ev.selectors) {
        if (!g.has_edge(s, i)) continue;
        informed[i].push_back(s);
        context[i].push_back(out.actions[s]);
        dirty[i] = 1;
      }
    }

    out.gain_rounds += ev.gains_exchanged ? 1 : 0;
    out.action_rounds += ev.broadcast_occurred ? 1 : 0;
    out.events.push_back(std::move(ev));
  }
  for (auto& v : out.committed_neighbors) std::sort(v.begin(), v.end());
  out.value = f.evaluate(out.actions);
  return out;
}

namespace detail {

// Shared sequential core for SG, DFS-SG and DSM: agent order[k] picks its
// greedy action given the actions of access[k].
inline CoordinationOutcome run_sequential(Algorithm alg, const Objective& f, const InfoDag& dag,
                                          const MeshGraph* relay_graph) {
  check_actions(f);
  const int n = f.num_agents();
  if (static_cast<int>(dag.order.size()) != n)
    throw std::invalid_argument("decision order must list every agent exactly once");
  dag.validate();
  CoordinationOutcome out = blank_outcome(alg, n);
  out.order = dag.order;
  std::mt19937_64 rng(0);

  // Value of the full predecessor prefix, carried forward so full-access
  // orders never re-evaluate their context.
  double prefix_value = 0;
  for (int k = 0; k < n; ++k) {
    const int i = dag.order[k];
    const auto& acc = dag.access[k];
    ElementSet ctx;
    for (int j : acc) ctx.push_back(out.actions[j]);
    double ctx_value = 0;
    const bool full_prefix = static_cast<int>(acc.size()) == k;
    if (full_prefix) {
      ctx_value = prefix_value;
    } else if (!ctx.empty()) {
      ctx_value = f.evaluate(ctx);
      ++out.context_evals[i];
    }
    LocalChoice c = local_greedy(f, i, ctx, ctx_value, 1.0, rng, out.eval_counts[i]);
    out.actions[i] = {i, c.action};
    out.selection_order[i] = k + 1;
    out.committed_neighbors[i] = acc;
    std::sort(out.committed_neighbors[i].begin(), out.committed_neighbors[i].end());
    out.committed_gains[i] = c.gain;
    if (full_prefix) prefix_value = c.value;

    IterationEvent ev;
    ev.iteration = k + 1;
    ev.recomputed = {i};
    ev.selectors = {i};
    ev.broadcast_occurred = k + 1 < n;
    out.events.push_back(std::move(ev));

    if (k > 0) {
      long long hops = 1;
      if (relay_graph) {
        auto h = shortest_hops(*relay_graph, dag.order[k - 1], i);
        if (!h)
          throw TopologyError("no relay path from agent " + std::to_string(dag.order[k - 1]) +
                              " to agent " + std::to_string(i));
        hops = *h;
      }
      out.relay_action_transmissions += static_cast<long long>(k) * hops;
      ++out.action_rounds;
    }
  }
  out.value = f.evaluate(out.actions);
  return out;
}

}  // namespace detail

/// Sequential greedy over `order` on an idealized line: every handoff is one
/// hop and carries all previously selected actions.
inline CoordinationOutcome run_sg(const Objective& f, const std::vector<int>& order) {
  return detail::run_sequential(Algorithm::kSg, f, InfoDag::full(order), nullptr);
}

/// Sequential greedy over `order`, relaying each handoff along the shortest
/// directed path in `g`.
inline CoordinationOutcome run_sg(const Objective& f, const std::vector<int>& order, const MeshGraph& g) {
  if (g.size() != f.num_agents()) throw std::invalid_argument("run_sg: graph size mismatch");
  return detail::run_sequential(Algorithm::kSg, f, InfoDag::full(order), &g);
}

/// Sequential rule with partial information access: agent order[k] conditions
/// only on the actions of dag.access[k]. Relay cost is not modelled.
inline CoordinationOutcome run_dsm(const Objective& f, const InfoDag& dag) {
  return detail::run_sequential(Algorithm::kDsm, f, dag, nullptr);
}

inline CoordinationOutcome run_dfs_sg(const Objective& f, const MeshGraph& g, int start) {
  if (g.size() != f.num_agents()) throw std::invalid_argument("run_dfs_sg: graph size mismatch");
  return detail::run_sequential(Algorithm::kDfsSg, f, dfs_order(g, start), &g);
}

/// Every agent picks an action uniformly at random; no evaluations, no
/// communication.
inline CoordinationOutcome run_random(const Objective& f, std::uint64_t seed) {
  detail::check_actions(f);
  const int n = f.num_agents();
  CoordinationOutcome out = detail::blank_outcome(Algorithm::kRandom, n);
  std::mt19937_64 rng(seed);
  IterationEvent ev;
  ev.iteration = 1;
  for (int i = 0; i < n; ++i) {
    out.actions[i] = {i, std::uniform_int_distribution<int>(0, f.num_actions(i) - 1)(rng)};
    out.selection_order[i] = 1;
    ev.selectors.push_back(i);
  }
  out.events.push_back(std::move(ev));
  out.value = f.evaluate(out.actions);
  return out;
}

struct Optimum {
  ElementSet actions;
  double value = 0;
};

inline constexpr double kMaxBruteForceProduct = 1e7;

/// Exhaustive maximization over the action product; ties go to the
/// lexicographically smallest action vector.
inline Optimum brute_force_optimum(const Objective& f, double max_product = kMaxBruteForceProduct) {
  detail::check_actions(f);
  const int n = f.num_agents();
  double product = 1;
  for (int c : f.action_counts()) product *= c;
  if (product > max_product)
    throw std::length_error("brute_force_optimum: " + std::to_string(product) +
                            " joint actions exceed the guard of " + std::to_string(max_product));
  ElementSet cur(n);
  for (int i = 0; i < n; ++i) cur[i] = {i, 0};
  Optimum best{cur, -std::numeric_limits<double>::infinity()};
  while (true) {
    double v = f.evaluate(cur);
    if (v > best.value) best = {cur, v};
    int i = n - 1;
    while (i >= 0 && cur[i].action + 1 == f.num_actions(i)) cur[i--].action = 0;
    if (i < 0) break;
    ++cur[i].action;
  }
  return best;
}

}  // namespace ragsim
