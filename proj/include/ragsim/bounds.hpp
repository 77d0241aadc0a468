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
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ragsim/coordination.hpp"
#include "ragsim/structure.hpp"
#include "ragsim/topology.hpp"

namespace ragsim {

/// Thrown when a bound is requested for an objective whose required structure
/// is neither claimed by construction nor exhaustively verified.
class StructureGuardError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Requirement { kMonotoneSubmodular, kSecondOrder };

/// Accepts the objective's own claims; otherwise runs the exhaustive check.
inline void require_structure(const Objective& f, Requirement need) {
  StructureClaims c = f.claims();
  bool ok = c.monotone && c.submodular && (need != Requirement::kSecondOrder || c.second_order_submodular);
  if (ok) return;
  if (f.ground_size() > kMaxExhaustiveGround)
    throw StructureGuardError("objective structure unverified and too large to check exhaustively");
  StructureReport r = validate_structure(f);
  ok = r.normalized && r.monotone && r.submodular &&
       (need != Requirement::kSecondOrder || r.second_order_submodular);
  if (!ok) throw StructureGuardError("objective fails the structural preconditions of this bound");
}

/// Sum over agents of coin at the outcome's actions, with each agent's
/// in-neighbors as its neighborhood.
inline double coin_sum(const Objective& f, const MeshGraph& g, std::span<const GroundElement> actions) {
  double sum = 0;
  for (int i = 0; i < f.num_agents(); ++i) sum += coin(f, i, actions, g.in(i));
  return sum;
}

/// Sum over agents of f(a_i | actions of the neighbors agent i held at commit).
inline double committed_gain_sum(const Objective& f, const CoordinationOutcome& out) {
  if (static_cast<int>(out.committed_neighbors.size()) != f.num_agents())
    throw std::logic_error("outcome has no committed-neighbor trace");
  double sum = 0;
  for (int i = 0; i < f.num_agents(); ++i) {
    ElementSet ctx;
    for (int j : out.committed_neighbors[i]) ctx.push_back(out.actions[j]);
    sum += marginal_gain(f, out.actions[i], ctx);
  }
  return sum;
}

// Closed forms. `optimum` is f(A*).

inline double apriori_rhs(double optimum, double kappa, double coins) {
  return (optimum - kappa * coins) / (1 + kappa);
}

inline double aposteriori_rhs(double optimum, double kappa, double committed_gains) {
  return optimum - kappa * committed_gains;
}

inline double approx_greedy_rhs(double optimum, double kappa, double coins, double eta) {
  if (!(eta > 0 && eta <= 1)) throw std::domain_error("eta must be in (0, 1]");
  return eta / (1 + eta * kappa) * (optimum - (1 / eta - 1 + kappa) * coins);
}

/// Ratio guaranteed by the curvature-only bounds, for a submodular objective
/// (use_total = false, c = kappa) or a c-submodular one (use_total = true).
inline double curvature_ratio(double c, bool complete, bool use_total) {
  if (!use_total) return complete ? 1 / (1 + c) : 1 - c;
  return complete ? (1 - c) / (1 + c - c * c) : (1 - c) * (1 - c);
}

// Instance-level bounds.

inline double apriori_bound(const Objective& f, const MeshGraph& g, const CoordinationOutcome& out,
                            double optimum) {
  require_structure(f, Requirement::kSecondOrder);
  return apriori_rhs(optimum, curvature(f), coin_sum(f, g, out.actions));
}

inline double aposteriori_bound(const Objective& f, const CoordinationOutcome& out, double optimum) {
  require_structure(f, Requirement::kMonotoneSubmodular);
  return aposteriori_rhs(optimum, curvature(f), committed_gain_sum(f, out));
}

inline double approx_greedy_bound(const Objective& f, const MeshGraph& g, const CoordinationOutcome& out,
                         double optimum, double eta) {
  require_structure(f, Requirement::kSecondOrder);
  return approx_greedy_rhs(optimum, curvature(f), coin_sum(f, g, out.actions), eta);
}

/// Picks the submodular case when f is submodular, the total-curvature case
/// otherwise. Needs the exhaustive table unless f claims submodularity.
inline double curvature_bound(const Objective& f, const MeshGraph& g, double optimum) {
  StructureClaims c = f.claims();
  if (c.monotone && c.submodular) return curvature_ratio(curvature(f), g.is_complete(), false) * optimum;
  if (f.ground_size() > kMaxExhaustiveGround)
    throw StructureGuardError("total curvature needs an exhaustive check");
  StructureReport r = validate_structure(f);
  if (!r.monotone) throw StructureGuardError("curvature bounds require a monotone objective");
  if (r.submodular && r.kappa) return curvature_ratio(*r.kappa, g.is_complete(), false) * optimum;
  if (!r.c_total) throw std::domain_error("total curvature undefined");
  return curvature_ratio(*r.c_total, g.is_complete(), true) * optimum;
}

// Posterior-bound building blocks: the per-agent gain as a function of which
// committed neighbors it has heard from.

/// delta_i(I): best gain of agent i given the actions of `informed`.
inline double posterior_delta(const Objective& f, int agent, std::span<const GroundElement> actions,
                              std::span<const int> informed) {
  ElementSet ctx;
  for (int j : informed) ctx.push_back(actions[j]);
  const double base = f.evaluate(ctx);
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < f.num_actions(agent); ++a)
    best = std::max(best, marginal_gain(f, {agent, a}, ctx, base));
  return best;
}

/// delta'_i(I): gain of the fixed action `action` given the actions of `informed`.
inline double posterior_delta_fixed(const Objective& f, int agent, int action,
                                    std::span<const GroundElement> actions, std::span<const int> informed) {
  ElementSet ctx;
  for (int j : informed) ctx.push_back(actions[j]);
  return marginal_gain(f, {agent, action}, ctx);
}

/// Slack of the approximate supermodularity of delta_i:
///   min over a2 of max over a1 of f(a1) - (1 - kappa) f(a2).
inline double supermodularity_slack(const Objective& f, int agent, double kappa) {
  const int m = f.num_actions(agent);
  std::vector<double> single(m);
  for (int a = 0; a < m; ++a) {
    const GroundElement one[] = {{agent, a}};
    single[a] = f.evaluate(one);
  }
  const double top = *std::max_element(single.begin(), single.end());
  double eps = std::numeric_limits<double>::infinity();
  for (double s : single) eps = std::min(eps, top - (1 - kappa) * s);
  return eps;
}

struct BoundReport {
  double algorithm_value = 0;
  double optimum_value = 0;
  /// False when optimum_value is a greedy surrogate rather than the true optimum.
  bool certified = false;
  double apriori = 0;
  double apriori_centralized = 0;
  double apriori_decentralized_floor = 0;
  double aposteriori = 0;
  double approx_greedy = 0;
  std::optional<double> curvature_ratio_bound;
  double coin_sum = 0;
  double committed_gain_sum = 0;
  double kappa = 0;
  std::optional<double> c_total;
  double eta = 1;

  /// Every bound that must hold, checked with absolute tolerance `tol`. The
  /// exact-greedy bounds apply only when eta = 1.
  bool holds(double tol = 1e-9) const {
    const double v = algorithm_value + tol;
    bool ok = v >= approx_greedy && optimum_value + tol >= algorithm_value;
    if (eta == 1.0)
      ok = ok && v >= apriori && v >= aposteriori &&
           (!curvature_ratio_bound || v >= *curvature_ratio_bound);
    return ok;
  }
};

/// All bounds for one RAG outcome. With `optimum` absent, A* is found by
/// brute force when the action product is within the guard and approximated
/// by complete-graph RAG otherwise (the report is then uncertified).
inline BoundReport make_bound_report(const Objective& f, const MeshGraph& g, const CoordinationOutcome& out,
                                     double eta = 1.0, std::optional<double> optimum = std::nullopt) {
  require_structure(f, Requirement::kSecondOrder);
  BoundReport r;
  r.eta = eta;
  r.algorithm_value = out.value;
  if (optimum) {
    r.optimum_value = *optimum;
    r.certified = true;
  } else {
    double product = 1;
    for (int c : f.action_counts()) product *= c;
    if (product <= kMaxBruteForceProduct) {
      r.optimum_value = brute_force_optimum(f).value;
      r.certified = true;
    } else {
      r.optimum_value = run_rag(f, complete_graph(f.num_agents())).value;
    }
  }
  r.kappa = curvature(f);
  r.coin_sum = coin_sum(f, g, out.actions);
  r.committed_gain_sum = committed_gain_sum(f, out);
  r.apriori = apriori_rhs(r.optimum_value, r.kappa, r.coin_sum);
  r.apriori_centralized = r.optimum_value / (1 + r.kappa);
  r.apriori_decentralized_floor = (1 - r.kappa) * r.optimum_value;
  r.aposteriori = aposteriori_rhs(r.optimum_value, r.kappa, r.committed_gain_sum);
  r.approx_greedy = approx_greedy_rhs(r.optimum_value, r.kappa, r.coin_sum, eta);
  if (f.ground_size() <= kMaxExhaustiveGround) {
    r.c_total = total_curvature(f);
    r.curvature_ratio_bound = curvature_ratio(r.kappa, g.is_complete(), false) * r.optimum_value;
  }
  return r;
}

}  // namespace ragsim
