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
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ragsim/objective.hpp"

namespace ragsim {

/// Largest ground set accepted by the exhaustive (2^|V|) routines.
inline constexpr int kMaxExhaustiveGround = 16;

/// f(element | context). Costs exactly two evaluations.
inline double marginal_gain(const Objective& f, const GroundElement& element,
                            std::span<const GroundElement> context) {
  if (std::find(context.begin(), context.end(), element) != context.end())
    throw std::invalid_argument("marginal_gain: element already in context");
  ElementSet with(context.begin(), context.end());
  with.push_back(element);
  return f.evaluate(with) - f.evaluate(context);
}

/// f(element | context) given a cached f(context). Costs one evaluation.
inline double marginal_gain(const Objective& f, const GroundElement& element,
                            std::span<const GroundElement> context, double context_value) {
  if (std::find(context.begin(), context.end(), element) != context.end())
    throw std::invalid_argument("marginal_gain: element already in context");
  ElementSet with(context.begin(), context.end());
  with.push_back(element);
  return f.evaluate(with) - context_value;
}

/// f evaluated on every subset of the ground set, indexed by bitmask over
/// flat element indices. Costs exactly 2^|V| evaluations.
class SubsetTable {
 public:
  explicit SubsetTable(const Objective& f) : size_(f.ground_size()) {
    if (size_ > kMaxExhaustiveGround)
      throw std::length_error("exhaustive check needs |V| <= " +
                              std::to_string(kMaxExhaustiveGround) + ", got " +
                              std::to_string(size_));
    const ElementSet ground = f.ground();
    values_.resize(std::size_t{1} << size_);
    ElementSet subset;
    for (std::uint32_t mask = 0; mask < values_.size(); ++mask) {
      subset.clear();
      for (int e = 0; e < size_; ++e)
        if (mask >> e & 1u) subset.push_back(ground[e]);
      values_[mask] = f.evaluate(subset);
    }
  }

  int ground_size() const { return size_; }
  std::uint32_t full() const { return (std::uint32_t{1} << size_) - 1; }
  double operator[](std::uint32_t mask) const { return values_[mask]; }
  double gain(int e, std::uint32_t mask) const {
    return values_[mask | (std::uint32_t{1} << e)] - values_[mask];
  }

 private:
  int size_;
  std::vector<double> values_;
};

namespace detail {

// 1 - min over non-empty A and a in A of [f(A) - f(A \ a)] / f(a).
inline double curvature_from_table(const SubsetTable& t) {
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 1; mask <= t.full(); ++mask)
    for (int e = 0; e < t.ground_size(); ++e) {
      std::uint32_t bit = std::uint32_t{1} << e;
      if (!(mask & bit)) continue;
      best = std::min(best, (t[mask] - t[mask & ~bit]) / t[bit]);
    }
  return 1.0 - best;
}

inline std::optional<double> total_curvature_from_table(const SubsetTable& t) {
  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int v = 0; v < t.ground_size(); ++v) {
    const std::uint32_t bit = std::uint32_t{1} << v;
    const std::uint32_t rest = t.full() & ~bit;
    double min_num = std::numeric_limits<double>::infinity();
    double max_den = 0.0;
    double min_pos_den = std::numeric_limits<double>::infinity();
    // Enumerate subsets of V \ {v}; numerator and denominator range over the
    // same family, so the pairwise minimum separates.
    for (std::uint32_t s = rest;; s = (s - 1) & rest) {
      double g = t.gain(v, s);
      min_num = std::min(min_num, g);
      if (g > 0) {
        max_den = std::max(max_den, g);
        min_pos_den = std::min(min_pos_den, g);
      }
      if (s == 0) break;
    }
    if (max_den <= 0) continue;
    any = true;
    best = std::min(best, min_num >= 0 ? min_num / max_den : min_num / min_pos_den);
  }
  if (!any) return std::nullopt;
  return 1.0 - best;
}

}  // namespace detail

inline void require_nonzero_singletons(const Objective& f) {
  for (const auto& e : f.ground()) {
    const GroundElement one[] = {e};
    if (f.evaluate(one) == 0.0)
      throw std::domain_error("curvature undefined: f({a}) = 0 for agent " +
                              std::to_string(e.agent) + " action " + std::to_string(e.action));
  }
}

/// Curvature of a monotone submodular f via the largest-context identity
/// kappa = 1 - min_a f(a | V \ a) / f(a). Costs 2|V| + 1 evaluations.
inline double curvature(const Objective& f) {
  const ElementSet ground = f.ground();
  double best = std::numeric_limits<double>::infinity();
  const double full = f.evaluate(ground);
  ElementSet without;
  for (std::size_t k = 0; k < ground.size(); ++k) {
    const GroundElement one[] = {ground[k]};
    const double single = f.evaluate(one);
    if (single == 0.0)
      throw std::domain_error("curvature undefined: f({a}) = 0 for agent " +
                              std::to_string(ground[k].agent) + " action " +
                              std::to_string(ground[k].action));
    without.assign(ground.begin(), ground.end());
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(k));
    best = std::min(best, (full - f.evaluate(without)) / single);
  }
  return 1.0 - best;
}

/// Curvature by the double minimization over every subset. Valid for any
/// f with non-zero singletons; exponential.
inline double exhaustive_curvature(const Objective& f) {
  SubsetTable t(f);
  for (int e = 0; e < t.ground_size(); ++e)
    if (t[std::uint32_t{1} << e] == 0.0) throw std::domain_error("curvature undefined: f({a}) = 0");
  return detail::curvature_from_table(t);
}

/// Total curvature c_f of a monotone f, exhaustively. Pairs with a zero
/// denominator are skipped; throws if every pair is skipped.
inline double total_curvature(const Objective& f) {
  SubsetTable t(f);
  auto c = detail::total_curvature_from_table(t);
  if (!c) throw std::domain_error("total curvature undefined: every marginal gain is zero");
  return *c;
}

struct StructureReport {
  bool normalized = false;
  bool monotone = false;
  bool submodular = false;
  bool second_order_submodular = false;
  bool singletons_nonzero = false;
  /// Set when f is submodular with non-zero singletons.
  std::optional<double> kappa;
  /// Set when f is monotone and some marginal gain is positive.
  std::optional<double> c_total;

  bool coverage_like() const {
    return normalized && monotone && submodular && second_order_submodular && singletons_nonzero;
  }
};

/// Exhaustive structural check. Uses the local (single-element) forms of
/// each property, which are equivalent to the set forms:
///   monotone:      f(X + a) >= f(X)
///   submodular:    f(X + a) + f(X + b) >= f(X + a + b) + f(X)
///   2nd-order:     X -> f(s | X) is supermodular for every s
/// Costs exactly 2^|V| evaluations.
inline StructureReport validate_structure(const Objective& f, double tol = 1e-9) {
  SubsetTable t(f);
  const int n = t.ground_size();
  StructureReport r;
  r.normalized = std::abs(t[0]) <= tol;
  r.monotone = r.submodular = r.second_order_submodular = true;
  r.singletons_nonzero = true;
  for (int e = 0; e < n; ++e)
    if (t[std::uint32_t{1} << e] == 0.0) r.singletons_nonzero = false;

  for (std::uint32_t x = 0; x <= t.full(); ++x) {
    for (int a = 0; a < n; ++a) {
      const std::uint32_t ba = std::uint32_t{1} << a;
      if (x & ba) continue;
      if (t[x | ba] < t[x] - tol) r.monotone = false;
      for (int b = a + 1; b < n; ++b) {
        const std::uint32_t bb = std::uint32_t{1} << b;
        if (x & bb) continue;
        if (t[x | ba] + t[x | bb] < t[x | ba | bb] + t[x] - tol) r.submodular = false;
        if (r.second_order_submodular) {
          for (int s = 0; s < n; ++s) {
            auto g = [&](std::uint32_t m) { return t.gain(s, m); };
            if (g(x | ba | bb) + g(x) < g(x | ba) + g(x | bb) - tol) {
              r.second_order_submodular = false;
              break;
            }
          }
        }
      }
    }
  }
  if (r.submodular && r.singletons_nonzero) r.kappa = detail::curvature_from_table(t);
  if (r.monotone) r.c_total = detail::total_curvature_from_table(t);
  return r;
}

/// Centralization of information: f(a_i) - f(a_i | actions of non-neighbors),
/// where non-neighbors are all agents outside `neighborhood` and other than
/// `agent`. `actions[j]` is agent j's selected action. Costs 3 evaluations.
inline double coin(const Objective& f, int agent, std::span<const GroundElement> actions,
                   std::span<const int> neighborhood) {
  if (static_cast<int>(actions.size()) != f.num_agents())
    throw std::invalid_argument("coin: every agent needs a selected action");
  if (std::find(neighborhood.begin(), neighborhood.end(), agent) != neighborhood.end())
    throw std::invalid_argument("coin: agent listed in its own neighborhood");
  ElementSet outside;
  for (int j = 0; j < f.num_agents(); ++j) {
    if (j == agent) continue;
    if (std::find(neighborhood.begin(), neighborhood.end(), j) != neighborhood.end()) continue;
    outside.push_back(actions[j]);
  }
  const GroundElement own[] = {actions[agent]};
  return f.evaluate(own) - marginal_gain(f, actions[agent], outside);
}

/// Area of the ring between radii (r_i - r_s) and r_s: an upper bound on the
/// overlap of a radius-r_s disk with disks centred at distance >= r_i.
/// The bound is meaningful for r_i >= r_s.
inline double coin_ring_bound(double sensing_radius, double comm_radius) {
  if (!(sensing_radius > 0)) throw std::domain_error("coin_ring_bound: r_s must be positive");
  if (comm_radius < 0) throw std::domain_error("coin_ring_bound: r_i must be non-negative");
  const double inner = comm_radius - sensing_radius;
  return std::max(0.0, std::numbers::pi * (sensing_radius * sensing_radius - inner * inner));
}

}  // namespace ragsim
