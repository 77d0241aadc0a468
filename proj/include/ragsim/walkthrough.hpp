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

// The two five-agent walkthroughs (line and star) used to pin down the
// per-round charging scheme.

#include <string>
#include <vector>

#include "ragsim/coordination.hpp"
#include "ragsim/timing.hpp"
#include "ragsim/topology.hpp"

namespace ragsim {

struct WalkthroughCase {
  std::string graph_name;
  MeshGraph graph;
  std::vector<double> best_gain;  // per agent
  int actions_per_agent = 8;
  std::vector<std::vector<int>> expected_selectors;  // per RAG iteration, 0-based ids
  std::vector<int> sg_order;
  bool sg_relay_over_graph = false;

  /// Modular objective: agent i's action 0 is worth best_gain[i], the others half.
  ModularObjective objective() const {
    std::vector<double> w;
    for (double g : best_gain)
      for (int a = 0; a < actions_per_agent; ++a) w.push_back(a == 0 ? g : g / 2);
    return ModularObjective(std::vector<int>(best_gain.size(), actions_per_agent), w);
  }
};

/// Undirected line 1-2-3-4-5; agents 2 and 4 hold local maxima.
inline WalkthroughCase walkthrough_line(int actions_per_agent = 8) {
  return {"line", line_graph(5), {1, 5, 2, 4, 3}, actions_per_agent, {{1, 3}, {0, 2, 4}}, {0, 1, 2, 3, 4}, false};
}

/// Undirected star centred on agent 2, which holds the global maximum; the
/// sequential order visits the centre second.
inline WalkthroughCase walkthrough_star(int actions_per_agent = 8) {
  return {"star", star_graph(5, 1), {1, 5, 2, 3, 4}, actions_per_agent, {{1}, {0, 2, 3, 4}}, {0, 1, 2, 3, 4}, true};
}

struct WalkthroughResult {
  CoordinationOutcome rag;
  CoordinationOutcome sg;
  TimeBreakdown rag_time;
  TimeBreakdown sg_time;
  bool selectors_match = false;
};

inline WalkthroughResult run_walkthrough(const WalkthroughCase& c, const DelayModel& dm,
                                         CommitRule rule = CommitRule::kGreatestGain) {
  ModularObjective f = c.objective();
  WalkthroughResult r;
  RagOptions opt;
  opt.commit_rule = rule;
  r.rag = run_rag(f, c.graph, opt);
  r.sg = c.sg_relay_over_graph ? run_sg(f, c.sg_order, c.graph) : run_sg(f, c.sg_order);
  r.rag_time = rag_time_breakdown(r.rag, dm, f.action_counts());
  r.sg_time = sg_time_breakdown(r.sg, dm, f.action_counts());
  std::vector<std::vector<int>> seen;
  for (const auto& ev : r.rag.events) seen.push_back(ev.selectors);
  r.selectors_match = seen == c.expected_selectors;
  return r;
}

}  // namespace ragsim
