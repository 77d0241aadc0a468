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

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ragsim/bounds.hpp"
#include "ragsim/instances.hpp"

namespace ragsim {
namespace {

constexpr double kTol = 1e-9;

// Independent a priori right-hand side: brute-force optimum, set-form
// curvature and coin written out from its definition.
double oracle_apriori(const Objective& f, const MeshGraph& g, const ElementSet& actions) {
  const double k = oracle::curvature(f);
  double coins = 0;
  for (int i = 0; i < f.num_agents(); ++i) {
    ElementSet far;
    for (int j = 0; j < f.num_agents(); ++j)
      if (j != i && !g.has_edge(j, i)) far.push_back(actions[j]);
    ElementSet with = far;
    with.push_back(actions[i]);
    const double single = f.evaluate(ElementSet{actions[i]});
    coins += single - (f.evaluate(with) - f.evaluate(far));
  }
  return (oracle::optimum(f) - k * coins) / (1 + k);
}

double oracle_aposteriori(const Objective& f, const CoordinationOutcome& out) {
  double gains = 0;
  for (int i = 0; i < f.num_agents(); ++i) {
    ElementSet ctx;
    for (int j : out.committed_neighbors[i]) ctx.push_back(out.actions[j]);
    ElementSet with = ctx;
    with.push_back(out.actions[i]);
    gains += f.evaluate(with) - f.evaluate(ctx);
  }
  return oracle::optimum(f) - oracle::curvature(f) * gains;
}

// Random instance whose singletons are all non-zero (curvature defined).
SmallInstance draw(std::mt19937_64& rng, int agents, int actions) {
  for (;;) {
    auto inst = random_small_instance(rng, agents, actions);
    bool ok = true;
    for (const auto& e : inst.objective.ground()) ok = ok && inst.objective.evaluate(ElementSet{e}) > 0;
    if (ok) return inst;
  }
}

// f(A) = (sum of weights)^p over one action per agent: monotone, not
// submodular for p > 1.
FunctionObjective power_toy(std::vector<int> counts, std::vector<double> w, double p) {
  return FunctionObjective(counts, [w, p, counts](std::span<const GroundElement> s) {
    double sum = 0;
    for (const auto& e : s) {
      int base = 0;
      for (int i = 0; i < e.agent; ++i) base += counts[i];
      sum += w[base + e.action];
    }
    return std::pow(sum, p);
  });
}

TEST(ClosedForms, AprioriWithoutCoinsIsCentralizedRatio) {
  EXPECT_DOUBLE_EQ(apriori_rhs(10, 0.25, 0), 8.0);
  EXPECT_DOUBLE_EQ(apriori_rhs(10, 0.0, 0), 10.0);
  EXPECT_DOUBLE_EQ(apriori_rhs(10, 0.5, 2), 6.0);
}

TEST(ClosedForms, ApproxGreedyAtEtaOneEqualsApriori) {
  for (double k : {0.0, 0.3, 1.0})
    for (double c : {0.0, 1.5, 4.0}) EXPECT_NEAR(approx_greedy_rhs(12, k, c, 1.0), apriori_rhs(12, k, c), 1e-12);
}

TEST(ClosedForms, ApproxGreedyOnCompleteGraph) {
  EXPECT_NEAR(approx_greedy_rhs(10, 0.5, 0, 0.5), 0.5 / 1.25 * 10, 1e-12);
  EXPECT_THROW(approx_greedy_rhs(10, 0.5, 0, 0), std::domain_error);
  EXPECT_THROW(approx_greedy_rhs(10, 0.5, 0, 1.1), std::domain_error);
}

TEST(ClosedForms, CurvatureRatios) {
  EXPECT_DOUBLE_EQ(curvature_ratio(0.5, true, false), 1 / 1.5);
  EXPECT_DOUBLE_EQ(curvature_ratio(0.5, false, false), 0.5);
  EXPECT_DOUBLE_EQ(curvature_ratio(0.5, true, true), 0.5 / 1.25);
  EXPECT_DOUBLE_EQ(curvature_ratio(0.5, false, true), 0.25);
  for (bool complete : {false, true})
    for (bool total : {false, true}) EXPECT_DOUBLE_EQ(curvature_ratio(0, complete, total), 1.0);
}

TEST(Apriori, DisjointDecentralizedInstanceIsOptimal) {
  GridCoverageObjective g(RoadMask(6, 1, true), {2, 2, 1}, {{{0, 0}}, {{1, 0}, {5, 0}}, {{2, 0}}, {{3, 0}}, {{4, 0}}});
  auto out = run_rag(g, empty_graph(3));
  const double opt = brute_force_optimum(g).value;
  EXPECT_DOUBLE_EQ(curvature(g), 0.0);
  EXPECT_DOUBLE_EQ(coin_sum(g, empty_graph(3), out.actions), 0.0);
  EXPECT_DOUBLE_EQ(apriori_bound(g, empty_graph(3), out, opt), opt);
  EXPECT_DOUBLE_EQ(out.value, opt);
}

TEST(Apriori, CompleteGraphHasNoCoinsAndCentralizedRatio) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 40; ++t) {
    auto inst = draw(rng, 5, 3);
    const auto& f = inst.objective;
    MeshGraph g = complete_graph(f.num_agents());
    auto out = run_rag(f, g);
    const double opt = brute_force_optimum(f).value;
    EXPECT_NEAR(coin_sum(f, g, out.actions), 0.0, 1e-12);
    EXPECT_NEAR(apriori_bound(f, g, out, opt), opt / (1 + curvature(f)), 1e-12);
    EXPECT_GE(out.value + kTol, opt / (1 + curvature(f)));
  }
}

TEST(Apriori, MatchesOracleAndHoldsOnRandomInstances) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 300; ++t) {
    auto inst = draw(rng, 6, 4);
    const auto& f = inst.objective;
    auto out = run_rag(f, inst.graph);
    const double opt = brute_force_optimum(f).value;
    const double rhs = apriori_bound(f, inst.graph, out, opt);
    EXPECT_NEAR(rhs, oracle_apriori(f, inst.graph, out.actions), 1e-9);
    EXPECT_GE(out.value + kTol, rhs) << to_string(inst.family);
  }
}

TEST(Apriori, FourAgentsThreeActionsFrozen) {
  std::mt19937_64 rng(3);
  SmallInstance inst = draw(rng, 4, 3);
  while (inst.objective.num_agents() != 4) inst = draw(rng, 4, 3);
  auto out = run_rag(inst.objective, inst.graph);
  const double opt = oracle::optimum(inst.objective);
  EXPECT_NEAR(apriori_bound(inst.objective, inst.graph, out, opt),
              oracle_apriori(inst.objective, inst.graph, out.actions), 1e-12);
  EXPECT_GE(out.value, apriori_bound(inst.objective, inst.graph, out, opt));
}

TEST(Apriori, RejectsObjectivesWithoutSecondOrderStructure) {
  auto f = power_toy({1, 1, 1}, {1, 1, 1}, 2.0);
  auto out = run_rag(f, empty_graph(3));
  EXPECT_THROW(apriori_bound(f, empty_graph(3), out, 9), StructureGuardError);
  EXPECT_THROW(aposteriori_bound(f, out, 9), StructureGuardError);
}

TEST(Apriori, EnlargingNeighborhoodsNeverLowersTheBound) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    auto inst = draw(rng, 6, 3);
    const auto& f = inst.objective;
    const int n = f.num_agents();
    auto out = run_rag(f, inst.graph);
    const double opt = brute_force_optimum(f).value;
    MeshGraph bigger = inst.graph;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b && std::bernoulli_distribution(0.3)(rng)) bigger.add_edge(a, b);
    EXPECT_GE(apriori_bound(f, bigger, out, opt) + kTol, apriori_bound(f, inst.graph, out, opt));
  }
}

TEST(Aposteriori, ModularRegimeIsOptimal) {
  ModularObjective f({3, 2, 2}, {1, 4, 2, 3, 3, 0.5, 6});
  auto out = run_rag(f, line_graph(3));
  const double opt = brute_force_optimum(f).value;
  EXPECT_DOUBLE_EQ(aposteriori_bound(f, out, opt), opt);
  EXPECT_DOUBLE_EQ(out.value, opt);
}

TEST(Aposteriori, DecentralizedUsesSingletonValues) {
  std::mt19937_64 rng(5);
  auto inst = draw(rng, 5, 3);
  const auto& f = inst.objective;
  auto out = run_rag(f, empty_graph(f.num_agents()));
  const double opt = brute_force_optimum(f).value;
  double singles = 0;
  for (const auto& a : out.actions) singles += f.evaluate(ElementSet{a});
  EXPECT_NEAR(aposteriori_bound(f, out, opt), opt - curvature(f) * singles, 1e-12);
}

TEST(Aposteriori, MatchesOracleAndHoldsOnRandomInstances) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 300; ++t) {
    auto inst = draw(rng, 6, 4);
    const auto& f = inst.objective;
    auto out = run_rag(f, inst.graph);
    const double opt = brute_force_optimum(f).value;
    const double rhs = aposteriori_bound(f, out, opt);
    EXPECT_NEAR(rhs, oracle_aposteriori(f, out), 1e-9);
    EXPECT_GE(out.value + kTol, rhs);
  }
}

TEST(ApproxGreedy, EtaOneEqualsApriori) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    auto inst = draw(rng, 5, 3);
    auto out = run_rag(inst.objective, inst.graph);
    const double opt = brute_force_optimum(inst.objective).value;
    EXPECT_NEAR(approx_greedy_bound(inst.objective, inst.graph, out, opt, 1.0),
                apriori_bound(inst.objective, inst.graph, out, opt), 1e-12);
  }
}

TEST(ApproxGreedy, HalfApproximateSelectorStaysAboveBound) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 300; ++t) {
    auto inst = draw(rng, 6, 4);
    RagOptions opt;
    opt.eta = 0.5;
    opt.seed = t;
    auto out = run_rag(inst.objective, inst.graph, opt);
    const double best = brute_force_optimum(inst.objective).value;
    EXPECT_GE(out.value + kTol, approx_greedy_bound(inst.objective, inst.graph, out, best, 0.5));
  }
}

TEST(CurvatureBound, SubmodularCompleteGraph) {
  std::mt19937_64 rng(9);
  auto inst = draw(rng, 4, 3);
  const auto& f = inst.objective;
  const double opt = brute_force_optimum(f).value;
  MeshGraph g = complete_graph(f.num_agents());
  EXPECT_NEAR(curvature_bound(f, g, opt), opt / (1 + curvature(f)), 1e-12);
  EXPECT_NEAR(curvature_bound(f, empty_graph(f.num_agents()), opt), opt * (1 - curvature(f)), 1e-12);
}

TEST(CurvatureBound, SupermodularToyUsesTotalCurvature) {
  auto f = power_toy({1, 1, 1}, {1, 1, 1}, 2.0);
  // c = 0.8 exhaustively; optimum 9.
  const double expected = (1 - 0.8) / (1 + 0.8 - 0.64) * 9;
  EXPECT_NEAR(curvature_bound(f, complete_graph(3), 9), expected, 1e-12);
  EXPECT_NEAR(curvature_bound(f, line_graph(3), 9), 0.2 * 0.2 * 9, 1e-12);
  EXPECT_GE(run_rag(f, complete_graph(3)).value, expected);
}

TEST(CurvatureBound, ModularIsOptimalEverywhere) {
  auto f = ModularObjective::cardinality({2, 2, 2});
  for (const auto& g : {complete_graph(3), line_graph(3), empty_graph(3)}) EXPECT_DOUBLE_EQ(curvature_bound(f, g, 3), 3);
}

TEST(CurvatureBound, RandomPowerToysStayAboveBound) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 100; ++t) {
    const int n = std::uniform_int_distribution<int>(2, 4)(rng);
    std::vector<int> counts(n);
    std::vector<double> w;
    for (auto& c : counts) {
      c = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int a = 0; a < c; ++a) w.push_back(std::uniform_real_distribution<double>(0.2, 2.0)(rng));
    }
    auto f = power_toy(counts, w, std::uniform_real_distribution<double>(1.0, 1.6)(rng));
    const double opt = brute_force_optimum(f).value;
    for (const auto& g : {complete_graph(n), line_graph(n), empty_graph(n)}) {
      auto out = run_rag(f, g);
      EXPECT_GE(out.value + kTol, curvature_bound(f, g, opt));
    }
  }
}

TEST(CurvatureBound, NonMonotoneIsRejected) {
  FunctionObjective f({1, 1}, [](std::span<const GroundElement> s) { return s.size() == 1 ? 1.0 : 0.0; });
  EXPECT_THROW(curvature_bound(f, complete_graph(2), 1), StructureGuardError);
}

TEST(PosteriorGain, NonIncreasingInInformedSet) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    auto inst = draw(rng, 6, 3);
    const auto& f = inst.objective;
    const int n = f.num_agents();
    if (n < 2) continue;
    auto out = run_rag(f, inst.graph);
    const int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
    std::vector<int> b1, b12;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const int pick = std::uniform_int_distribution<int>(0, 2)(rng);
      if (pick == 0) b1.push_back(j);
      if (pick <= 1) b12.push_back(j);
    }
    EXPECT_GE(posterior_delta(f, i, out.actions, b1) + kTol, posterior_delta(f, i, out.actions, b12));
  }
}

TEST(PosteriorGain, FixedActionSurrogateIsSupermodular) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    auto inst = draw(rng, 5, 3);
    const auto& f = inst.objective;
    const int n = f.num_agents();
    if (n < 2) continue;
    auto out = run_rag(f, inst.graph);
    const int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const int a = std::uniform_int_distribution<int>(0, f.num_actions(i) - 1)(rng);
    std::vector<int> b1, b2, s;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const int pick = std::uniform_int_distribution<int>(0, 3)(rng);
      if (pick == 0) b1.push_back(j);
      if (pick == 1) b2.push_back(j);
      if (pick == 2) s.push_back(j);
    }
    auto d = [&](std::vector<int> x, const std::vector<int>& y) {
      x.insert(x.end(), y.begin(), y.end());
      return posterior_delta_fixed(f, i, a, out.actions, x);
    };
    std::vector<int> b12 = b1;
    b12.insert(b12.end(), b2.begin(), b2.end());
    const double gain_small = d(s, b1) - d({}, b1);
    const double gain_large = d(s, b12) - d({}, b12);
    EXPECT_LE(gain_small, gain_large + kTol);
  }
}

TEST(PosteriorGain, SandwichedByFixedActionSurrogate) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 150; ++t) {
    auto inst = draw(rng, 5, 4);
    const auto& f = inst.objective;
    const int n = f.num_agents();
    auto out = run_rag(f, inst.graph);
    const int i = std::uniform_int_distribution<int>(0, n - 1)(rng);
    const double k = curvature(f);
    const double eps = supermodularity_slack(f, i, k);
    // The slack is attained at the action with the largest singleton value.
    int a2 = 0;
    for (int a = 1; a < f.num_actions(i); ++a)
      if (f.evaluate(ElementSet{{i, a}}) > f.evaluate(ElementSet{{i, a2}})) a2 = a;
    std::vector<int> s;
    for (int j = 0; j < n; ++j)
      if (j != i && std::bernoulli_distribution(0.5)(rng)) s.push_back(j);
    const double delta = posterior_delta(f, i, out.actions, s);
    const double fixed = posterior_delta_fixed(f, i, a2, out.actions, s);
    EXPECT_LE(fixed, delta + kTol);
    EXPECT_LE(delta, fixed + eps + kTol);
    EXPECT_GE(eps, -kTol);
  }
}

TEST(Report, CertifiedReportsHoldOnRandomInstances) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 150; ++t) {
    auto inst = draw(rng, 6, 3);
    auto out = run_rag(inst.objective, inst.graph);
    BoundReport r = make_bound_report(inst.objective, inst.graph, out);
    EXPECT_TRUE(r.certified);
    EXPECT_TRUE(r.holds());
    EXPECT_DOUBLE_EQ(r.optimum_value, oracle::optimum(inst.objective));
    EXPECT_NEAR(r.apriori, r.approx_greedy, 1e-12);
    EXPECT_GE(r.apriori_centralized + kTol, r.apriori);
    EXPECT_EQ(r.c_total.has_value(), inst.objective.ground_size() <= kMaxExhaustiveGround);
    if (r.c_total) {
      EXPECT_NEAR(*r.c_total, r.kappa, 1e-12);
    }
  }
}

TEST(Report, LargeProductsAreUncertified) {
  std::vector<std::vector<Cell>> fps;
  for (int i = 0; i < 8; ++i)
    for (int a = 0; a < 8; ++a) fps.push_back({{i, a}, {(i + 1) % 8, a}});
  GridCoverageObjective f(RoadMask(8, 8, true), std::vector<int>(8, 8), fps);
  auto out = run_rag(f, line_graph(8));
  BoundReport r = make_bound_report(f, line_graph(8), out);
  EXPECT_FALSE(r.certified);
  EXPECT_FALSE(r.c_total.has_value());
}

}  // namespace
}  // namespace ragsim
