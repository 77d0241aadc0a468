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

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "ragsim/coordination.hpp"
#include "ragsim/instances.hpp"
#include "ragsim/structure.hpp"
#include "ragsim/walkthrough.hpp"

namespace ragsim {
namespace {

using Ids = std::vector<int>;
using Rounds = std::vector<std::vector<int>>;

Rounds selectors_of(const CoordinationOutcome& out) {
  Rounds r;
  for (const auto& ev : out.events) r.push_back(ev.selectors);
  return r;
}

Ids iota(int n) {
  Ids v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void expect_same_outcome(const CoordinationOutcome& a, const CoordinationOutcome& b) {
  EXPECT_EQ(a.actions, b.actions);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.selection_order, b.selection_order);
  EXPECT_EQ(a.eval_counts, b.eval_counts);
  EXPECT_EQ(a.committed_gains, b.committed_gains);
  EXPECT_EQ(selectors_of(a), selectors_of(b));
}

TEST(Algorithm, NamesRoundTrip) {
  for (auto a : {Algorithm::kRag, Algorithm::kSg, Algorithm::kDfsSg, Algorithm::kDsm, Algorithm::kRandom,
                 Algorithm::kOptimal})
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  EXPECT_THROW(parse_algorithm("greedy"), std::invalid_argument);
}

TEST(Rag, IsolatedAgentsPickBestSingletonInOneIteration) {
  auto f = ModularObjective({2, 3}, {1, 4, 2, 7, 7});
  CoordinationOutcome out = run_rag(f, empty_graph(2));
  EXPECT_EQ(out.actions, (ElementSet{{0, 1}, {1, 1}}));
  EXPECT_EQ(out.iterations(), 1);
  EXPECT_EQ(out.gain_rounds, 0);
  EXPECT_EQ(out.action_rounds, 0);
  EXPECT_DOUBLE_EQ(out.value, 11.0);
}

TEST(Rag, LineWalkthroughSelectsLocalMaximaFirst) {
  auto c = walkthrough_line();
  auto f = c.objective();
  CoordinationOutcome out = run_rag(f, c.graph);
  EXPECT_EQ(selectors_of(out), (Rounds{{1, 3}, {0, 2, 4}}));
  EXPECT_EQ(out.gain_rounds, 1);
  EXPECT_EQ(out.action_rounds, 1);
  EXPECT_EQ(out.committed_neighbors[0], Ids{1});
  EXPECT_EQ(out.committed_neighbors[2], (Ids{1, 3}));
  // Only the second-iteration agents recompute.
  EXPECT_EQ(out.events[1].recomputed, (Ids{0, 2, 4}));
  EXPECT_FALSE(out.events[1].gains_exchanged);
}

TEST(Rag, StarWalkthroughCenterCommitsAlone) {
  auto c = walkthrough_star();
  auto f = c.objective();
  CoordinationOutcome out = run_rag(f, c.graph);
  EXPECT_EQ(selectors_of(out), (Rounds{{1}, {0, 2, 3, 4}}));
  EXPECT_EQ(out.gain_rounds, 1);
  EXPECT_EQ(out.action_rounds, 1);
}

TEST(Rag, EqualGainsBreakTowardLowerId) {
  auto f = ModularObjective::cardinality({1, 1, 1});
  CoordinationOutcome out = run_rag(f, complete_graph(3));
  EXPECT_EQ(selectors_of(out), (Rounds{{0}, {1}, {2}}));
}

TEST(Rag, LeastGainRuleInvertsCommitOrder) {
  auto c = walkthrough_line();
  auto f = c.objective();
  RagOptions opt;
  opt.commit_rule = CommitRule::kLeastGain;
  CoordinationOutcome out = run_rag(f, c.graph, opt);
  EXPECT_NE(selectors_of(out), c.expected_selectors);
}

TEST(Rag, ZeroGainAgentStillCommitsLowestAction) {
  GridCoverageObjective f(RoadMask(3, 3, true), {2, 2}, {{{0, 0}}, {{1, 1}}, {{0, 0}}, {{1, 1}}});
  CoordinationOutcome out = run_rag(f, complete_graph(2));
  EXPECT_EQ(out.actions[0], (GroundElement{0, 0}));
  EXPECT_EQ(out.actions[1], (GroundElement{1, 1}));
  EXPECT_DOUBLE_EQ(out.committed_gains[1], 1.0);
}

TEST(Rag, RejectsMismatchedGraphAndBadEta) {
  auto f = ModularObjective::cardinality({1, 1});
  EXPECT_THROW(run_rag(f, empty_graph(3)), std::invalid_argument);
  RagOptions opt;
  opt.eta = 0;
  EXPECT_THROW(run_rag(f, empty_graph(2), opt), std::domain_error);
}

TEST(Rag, RejectsAgentWithoutActions) {
  auto f = ModularObjective::cardinality({1, 0});
  EXPECT_THROW(run_rag(f, empty_graph(2)), std::domain_error);
}

TEST(Rag, CompleteGraphEqualsCentralGreedy) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    auto inst = random_small_instance(rng, 5, 3);
    const auto& f = inst.objective;
    const int n = f.num_agents();
    CoordinationOutcome out = run_rag(f, complete_graph(n));
    // Central greedy: repeatedly add the (agent, action) of largest gain,
    // ties to the lower agent then lower action.
    ElementSet chosen;
    std::vector<char> done(n, 0);
    for (int round = 0; round < n; ++round) {
      double best = -1;
      GroundElement pick{};
      for (int i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (int a = 0; a < f.num_actions(i); ++a) {
          ElementSet with = chosen;
          with.push_back({i, a});
          const double g = f.evaluate(with) - f.evaluate(chosen);
          if (g > best) best = g, pick = {i, a};
        }
      }
      done[pick.agent] = 1;
      chosen.push_back(pick);
      ASSERT_EQ(out.events[round].selectors, Ids{pick.agent}) << "trial " << t;
      EXPECT_EQ(out.actions[pick.agent], pick);
    }
  }
}

TEST(Rag, ProgressAndTerminationOnRandomInstances) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    auto inst = random_small_instance(rng, 7, 3);
    const auto& f = inst.objective;
    const int n = f.num_agents();
    CoordinationOutcome out = run_rag(f, inst.graph);
    EXPECT_LE(out.iterations(), n);
    std::vector<int> seen(n, 0);
    for (const auto& ev : out.events) {
      EXPECT_FALSE(ev.selectors.empty());
      for (int s : ev.selectors) ++seen[s];
    }
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(seen[i], 1);
      EXPECT_EQ(out.actions[i].agent, i);
      EXPECT_TRUE(f.contains(out.actions[i]));
    }
    EXPECT_DOUBLE_EQ(out.value, f.evaluate(out.actions));
  }
}

TEST(Rag, RoundsStayBelowAgentCount) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 300; ++t) {
    auto inst = random_small_instance(rng, 8, 2);
    const int n = inst.objective.num_agents();
    CoordinationOutcome out = run_rag(inst.objective, inst.graph);
    EXPECT_LE(out.gain_rounds, std::max(0, n - 1)) << to_string(inst.family);
    EXPECT_LE(out.action_rounds, std::max(0, n - 1)) << to_string(inst.family);
    int g = 0, a = 0;
    for (const auto& ev : out.events) g += ev.gains_exchanged, a += ev.broadcast_occurred;
    EXPECT_EQ(g, out.gain_rounds);
    EXPECT_EQ(a, out.action_rounds);
  }
}

TEST(Rag, EvaluationsPerAgentBounded) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    auto inst = random_small_instance(rng, 8, 3);
    const auto& f = inst.objective;
    const auto before = f.evaluations();
    CoordinationOutcome out = run_rag(f, inst.graph);
    std::uint64_t total = 0;
    for (int i = 0; i < f.num_agents(); ++i) {
      const std::uint64_t v = f.num_actions(i);
      const std::uint64_t nbrs = inst.graph.in(i).size();
      EXPECT_LE(out.eval_counts[i], v * std::max<std::uint64_t>(1, nbrs) + v);
      EXPECT_LE(out.context_evals[i], nbrs);
      total += out.eval_counts[i] + out.context_evals[i];
    }
    // Plus one evaluation of the final joint value.
    EXPECT_EQ(f.evaluations() - before, total + 1);
  }
}

TEST(Rag, DeterministicForSameSeed) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    auto inst = random_small_instance(rng, 6, 3);
    RagOptions opt;
    opt.eta = 0.5;
    opt.seed = 77;
    auto a = run_rag(inst.objective, inst.graph, opt);
    auto b = run_rag(inst.objective, inst.graph, opt);
    expect_same_outcome(a, b);
    for (std::size_t k = 0; k < a.events.size(); ++k) {
      EXPECT_EQ(a.events[k].recomputed, b.events[k].recomputed);
      EXPECT_EQ(a.events[k].gains_exchanged, b.events[k].gains_exchanged);
      EXPECT_EQ(a.events[k].broadcast_occurred, b.events[k].broadcast_occurred);
    }
  }
}

TEST(Rag, ApproximateSelectionStaysWithinFactorOfBest) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 100; ++t) {
    auto inst = random_small_instance(rng, 5, 4);
    const auto& f = inst.objective;
    RagOptions opt;
    opt.eta = 0.6;
    opt.seed = t;
    auto out = run_rag(f, inst.graph, opt);
    for (int i = 0; i < f.num_agents(); ++i) {
      ElementSet ctx;
      for (int j : out.committed_neighbors[i]) ctx.push_back(out.actions[j]);
      double best = 0;
      for (int a = 0; a < f.num_actions(i); ++a) best = std::max(best, marginal_gain(f, {i, a}, ctx));
      EXPECT_GE(out.committed_gains[i], 0.6 * best - 1e-12);
      EXPECT_NEAR(out.committed_gains[i], marginal_gain(f, out.actions[i], ctx), 1e-12);
    }
  }
}

TEST(Sg, IdealizedLineRelaysTen) {
  auto f = walkthrough_line().objective();
  auto out = run_sg(f, iota(5));
  EXPECT_EQ(out.relay_action_transmissions, 10);
  EXPECT_EQ(out.action_rounds, 4);
  EXPECT_EQ(out.order, iota(5));
}

TEST(Sg, StarWithCenterSecondRelaysSeventeen) {
  auto c = walkthrough_star();
  auto out = run_sg(c.objective(), c.sg_order, c.graph);
  EXPECT_EQ(out.relay_action_transmissions, 17);
}

TEST(Sg, WorstCycleRelaysGrowCubically) {
  for (int n : {3, 5, 8}) {
    auto f = ModularObjective::cardinality(std::vector<int>(n, 2));
    auto out = run_sg(f, iota(n), worst_case_cycle(n));
    // Handoff k carries k actions over n-1 hops.
    const long long expected = static_cast<long long>(n) * (n - 1) / 2 * (n - 1);
    EXPECT_EQ(out.relay_action_transmissions, expected);
  }
}

TEST(Sg, UnreachableHandoffIsATopologyError) {
  auto f = ModularObjective::cardinality({1, 1});
  EXPECT_THROW(run_sg(f, {0, 1}, empty_graph(2)), TopologyError);
}

TEST(Sg, RejectsNonPermutationOrder) {
  auto f = ModularObjective::cardinality({1, 1});
  EXPECT_THROW(run_sg(f, {0, 0}), std::invalid_argument);
  EXPECT_THROW(run_sg(f, {0}), std::invalid_argument);
}

TEST(Sg, AtLeastHalfOfOptimum) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    auto inst = random_small_instance(rng, 5, 3);
    const auto& f = inst.objective;
    Ids order = iota(f.num_agents());
    std::shuffle(order.begin(), order.end(), rng);
    auto out = run_sg(f, order);
    const double opt = oracle::optimum(f);
    EXPECT_GE(out.value, 0.5 * opt - 1e-9);
  }
}

TEST(Sg, MakesOneMarginalQueryPerActionAndNoContextEvaluations) {
  std::mt19937_64 rng(13);
  auto inst = random_small_instance(rng, 6, 4);
  const auto& f = inst.objective;
  auto before = f.evaluations();
  auto out = run_sg(f, iota(f.num_agents()));
  std::uint64_t sum = 0;
  for (int i = 0; i < f.num_agents(); ++i) {
    EXPECT_EQ(out.eval_counts[i], static_cast<std::uint64_t>(f.num_actions(i)));
    EXPECT_EQ(out.context_evals[i], 0u);
    sum += out.eval_counts[i];
  }
  EXPECT_EQ(f.evaluations() - before, sum + 1);
}

TEST(Dsm, FullAccessMatchesSg) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 50; ++t) {
    auto inst = random_small_instance(rng, 6, 3);
    Ids order = iota(inst.objective.num_agents());
    std::shuffle(order.begin(), order.end(), rng);
    auto dsm = run_dsm(inst.objective, InfoDag::full(order));
    auto sg = run_sg(inst.objective, order);
    expect_same_outcome(dsm, sg);
  }
}

TEST(Dsm, EmptyAccessMatchesDecentralizedRag) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 50; ++t) {
    auto inst = random_small_instance(rng, 6, 3);
    const int n = inst.objective.num_agents();
    InfoDag dag{iota(n), std::vector<Ids>(n)};
    auto dsm = run_dsm(inst.objective, dag);
    auto rag = run_rag(inst.objective, empty_graph(n));
    EXPECT_EQ(dsm.actions, rag.actions);
    EXPECT_EQ(dsm.value, rag.value);
  }
}

TEST(Dsm, PartialAccessConditionsOnlyOnVisibleAgents) {
  // Agents 0 and 1 overlap fully; agent 2 sees only agent 0.
  GridCoverageObjective f(RoadMask(4, 1, true), {1, 2, 2},
                          {{{0, 0}}, {{0, 0}}, {{1, 0}}, {{0, 0}, {2, 0}}, {{3, 0}}});
  InfoDag dag{{0, 1, 2}, {{}, {}, {0}}};
  auto out = run_dsm(f, dag);
  EXPECT_EQ(out.actions[1], (GroundElement{1, 0}));  // blind to agent 0
  EXPECT_EQ(out.actions[2], (GroundElement{2, 0}));  // {0,0} already seen via agent 0
  EXPECT_EQ(out.context_evals[2], 1u);
  EXPECT_EQ(out.relay_action_transmissions, 2 + 1);  // idealized hops, never relayed over a graph
}

TEST(DfsSg, LineFromEndpointMatchesIdealizedSg) {
  auto f = walkthrough_line().objective();
  auto dfs = run_dfs_sg(f, line_graph(5), 0);
  auto sg = run_sg(f, iota(5));
  EXPECT_EQ(dfs.actions, sg.actions);
  EXPECT_EQ(dfs.relay_action_transmissions, 10);
}

TEST(DfsSg, StarRelayCountDependsOnStart) {
  auto c = walkthrough_star();
  auto f = c.objective();
  // From the center: order 1,0,2,3,4; leaf-to-leaf handoffs take two hops.
  EXPECT_EQ(run_dfs_sg(f, c.graph, 1).relay_action_transmissions, 1 * 1 + 2 * 2 + 3 * 2 + 4 * 2);
  // From leaf 0: order 0,1,2,3,4, the sequential walkthrough order.
  EXPECT_EQ(run_dfs_sg(f, c.graph, 0).relay_action_transmissions, 17);
}

TEST(DfsSg, ValueMatchesSgOnSameOrder) {
  std::mt19937_64 rng(16);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = random_small_instance(rng, 6, 3);
    const int n = inst.objective.num_agents();
    MeshGraph g = strongly_connected_line_plus(n, std::min(3, (n - 1) * (n - 2) / 2), seed);
    auto dfs = run_dfs_sg(inst.objective, g, 0);
    auto sg = run_sg(inst.objective, dfs.order, g);
    EXPECT_EQ(dfs.value, sg.value);
    EXPECT_EQ(dfs.relay_action_transmissions, sg.relay_action_transmissions);
    EXPECT_EQ(dfs.algorithm, Algorithm::kDfsSg);
  }
}

TEST(Random, PicksValidActionsWithoutEvaluatingGains) {
  auto f = ModularObjective::cardinality({3, 4, 5});
  auto before = f.evaluations();
  auto out = run_random(f, 3);
  EXPECT_EQ(f.evaluations() - before, 1u);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(f.contains(out.actions[i]));
  EXPECT_EQ(run_random(f, 3).actions, out.actions);
}

TEST(BruteForce, SingleAgentTakesArgmax) {
  ModularObjective f({3}, {1, 5, 2});
  auto opt = brute_force_optimum(f);
  EXPECT_EQ(opt.actions, (ElementSet{{0, 1}}));
  EXPECT_DOUBLE_EQ(opt.value, 5);
}

TEST(BruteForce, TiesGoToLexicographicallySmallest) {
  GridCoverageObjective f(RoadMask(4, 1, true), {2, 2}, {{{0, 0}}, {{1, 0}}, {{2, 0}}, {{3, 0}}});
  auto opt = brute_force_optimum(f);
  EXPECT_EQ(opt.actions, (ElementSet{{0, 0}, {1, 0}}));
  EXPECT_DOUBLE_EQ(opt.value, 2);
}

TEST(BruteForce, MatchesRecursiveOracleOnFourByThree) {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 20) {
    auto inst = random_small_instance(rng, 4, 3);
    if (inst.objective.num_agents() != 4) continue;
    const auto before = inst.objective.evaluations();
    auto opt = brute_force_optimum(inst.objective);
    const auto used = inst.objective.evaluations() - before;
    double product = 1;
    for (int c : inst.objective.action_counts()) product *= c;
    EXPECT_EQ(static_cast<double>(used), product);
    EXPECT_EQ(opt.value, oracle::optimum(inst.objective));
    EXPECT_EQ(opt.value, inst.objective.evaluate(opt.actions));
    ++checked;
  }
}

TEST(BruteForce, GuardsProductSize) {
  auto f = ModularObjective::cardinality(std::vector<int>(8, 10));
  EXPECT_THROW(brute_force_optimum(f), std::length_error);
}

}  // namespace
}  // namespace ragsim
