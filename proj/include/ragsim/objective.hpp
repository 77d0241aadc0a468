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
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ragsim {

/// One candidate action of one agent. The ground set of a coordination
/// problem is the disjoint union of every agent's action set.
struct GroundElement {
  int agent = 0;
  int action = 0;

  friend auto operator<=>(const GroundElement&, const GroundElement&) = default;
};

using ElementSet = std::vector<GroundElement>;

/// Properties an objective guarantees by construction. Objectives that do not
/// know their own structure leave these false and must be validated
/// exhaustively before bound evaluation.
struct StructureClaims {
  bool monotone = false;
  bool submodular = false;
  bool second_order_submodular = false;
};

// Atomic tally that survives copies (the copy starts from the current count).
class EvalCounter {
 public:
  EvalCounter() = default;
  EvalCounter(const EvalCounter& other) : count_(other.load()) {}
  EvalCounter& operator=(const EvalCounter& other) {
    count_.store(other.load(), std::memory_order_relaxed);
    return *this;
  }

  void bump() const { count_.fetch_add(1, std::memory_order_relaxed); }
  std::uint64_t load() const { return count_.load(std::memory_order_relaxed); }

 private:
  mutable std::atomic<std::uint64_t> count_{0};
};

/// A normalized set function over a product ground set. Subclasses implement
/// `value`; every call through `evaluate` is counted.
class Objective {
 public:
  explicit Objective(std::vector<int> action_counts)
      : action_counts_(std::move(action_counts)) {
    offsets_.reserve(action_counts_.size() + 1);
    offsets_.push_back(0);
    for (int c : action_counts_) {
      if (c < 0) throw std::invalid_argument("negative action count");
      offsets_.push_back(offsets_.back() + c);
    }
  }
  virtual ~Objective() = default;

  double evaluate(std::span<const GroundElement> set) const {
    counter_.bump();
    return value(set);
  }

  std::uint64_t evaluations() const { return counter_.load(); }

  int num_agents() const { return static_cast<int>(action_counts_.size()); }
  int num_actions(int agent) const { return action_counts_.at(agent); }
  const std::vector<int>& action_counts() const { return action_counts_; }
  int ground_size() const { return offsets_.back(); }

  bool contains(const GroundElement& e) const {
    return e.agent >= 0 && e.agent < num_agents() && e.action >= 0 &&
           e.action < action_counts_[e.agent];
  }

  int index_of(const GroundElement& e) const {
    if (!contains(e)) throw std::out_of_range("element outside ground set");
    return offsets_[e.agent] + e.action;
  }

  GroundElement element(int index) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
    int agent = static_cast<int>(it - offsets_.begin()) - 1;
    return {agent, index - offsets_[agent]};
  }

  ElementSet ground() const {
    ElementSet out;
    out.reserve(ground_size());
    for (int i = 0; i < num_agents(); ++i)
      for (int a = 0; a < action_counts_[i]; ++a) out.push_back({i, a});
    return out;
  }

  virtual StructureClaims claims() const { return {}; }

 protected:
  virtual double value(std::span<const GroundElement> set) const = 0;

 private:
  std::vector<int> action_counts_;
  std::vector<int> offsets_;
  EvalCounter counter_;
};

/// f(A) = sum of per-element weights.
class ModularObjective final : public Objective {
 public:
  ModularObjective(std::vector<int> action_counts, std::vector<double> weights)
      : Objective(std::move(action_counts)), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != ground_size())
      throw std::invalid_argument("one weight per ground element required");
    for (double w : weights_)
      if (w < 0) throw std::invalid_argument("modular weights must be non-negative");
  }

  /// f(A) = |A|.
  static ModularObjective cardinality(std::vector<int> action_counts) {
    int total = std::accumulate(action_counts.begin(), action_counts.end(), 0);
    return ModularObjective(std::move(action_counts), std::vector<double>(total, 1.0));
  }

  StructureClaims claims() const override { return {true, true, true}; }

 protected:
  double value(std::span<const GroundElement> set) const override {
    double sum = 0;
    for (const auto& e : set) sum += weights_[index_of(e)];
    return sum;
  }

 private:
  std::vector<double> weights_;
};

/// Wraps an arbitrary callable. Structure is unknown until validated.
class FunctionObjective final : public Objective {
 public:
  using Fn = std::function<double(std::span<const GroundElement>)>;

  FunctionObjective(std::vector<int> action_counts, Fn fn, StructureClaims claims = {})
      : Objective(std::move(action_counts)), fn_(std::move(fn)), claims_(claims) {}

  StructureClaims claims() const override { return claims_; }

 protected:
  double value(std::span<const GroundElement> set) const override { return fn_(set); }

 private:
  Fn fn_;
  StructureClaims claims_;
};

/// Weighted coverage: every ground element covers a set of items out of a
/// finite universe; f(A) = item_weight * |union of covered items|.
class CoverageObjective : public Objective {
 public:
  CoverageObjective(std::vector<int> action_counts, int universe_size,
                    std::vector<std::vector<int>> footprints, double item_weight = 1.0)
      : Objective(std::move(action_counts)),
        universe_size_(universe_size),
        item_weight_(item_weight),
        footprints_(std::move(footprints)) {
    if (static_cast<int>(footprints_.size()) != ground_size())
      throw std::invalid_argument("one footprint per ground element required");
    for (auto& fp : footprints_) {
      std::sort(fp.begin(), fp.end());
      fp.erase(std::unique(fp.begin(), fp.end()), fp.end());
      if (!fp.empty() && (fp.front() < 0 || fp.back() >= universe_size_))
        throw std::out_of_range("footprint item outside universe");
    }
  }

  const std::vector<int>& footprint(const GroundElement& e) const {
    return footprints_[index_of(e)];
  }
  int universe_size() const { return universe_size_; }
  double item_weight() const { return item_weight_; }

  /// Items covered by the union of the set's footprints, sorted.
  std::vector<int> covered_items(std::span<const GroundElement> set) const {
    std::vector<int> items;
    for (const auto& e : set) {
      const auto& fp = footprints_[index_of(e)];
      items.insert(items.end(), fp.begin(), fp.end());
    }
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    return items;
  }

  StructureClaims claims() const override { return {true, true, true}; }

 protected:
  double value(std::span<const GroundElement> set) const override {
    if (set.empty()) return 0.0;
    if (set.size() == 1) return item_weight_ * static_cast<double>(footprints_[index_of(set[0])].size());
    std::vector<std::uint64_t> bits((static_cast<std::size_t>(universe_size_) + 63) / 64, 0);
    std::int64_t count = 0;
    for (const auto& e : set) {
      for (int item : footprints_[index_of(e)]) {
        std::uint64_t mask = std::uint64_t{1} << (item & 63);
        std::uint64_t& word = bits[static_cast<std::size_t>(item) >> 6];
        if (!(word & mask)) {
          word |= mask;
          ++count;
        }
      }
    }
    return item_weight_ * static_cast<double>(count);
  }

 private:
  int universe_size_;
  double item_weight_;
  std::vector<std::vector<int>> footprints_;
};

}  // namespace ragsim
