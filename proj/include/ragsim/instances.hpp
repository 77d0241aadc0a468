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

// Seeded generators of small random problem instances for certification.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ragsim/grid.hpp"
#include "ragsim/topology.hpp"

namespace ragsim {

enum class GraphFamily { kEmpty, kComplete, kLine, kStar, kKnn, kRandomDigraph };

inline std::string to_string(GraphFamily g) {
  switch (g) {
    case GraphFamily::kEmpty: return "empty";
    case GraphFamily::kComplete: return "complete";
    case GraphFamily::kLine: return "line";
    case GraphFamily::kStar: return "star";
    case GraphFamily::kKnn: return "knn";
    case GraphFamily::kRandomDigraph: return "random-digraph";
  }
  return "?";
}

struct SmallInstance {
  GridCoverageObjective objective;
  MeshGraph graph;
  GraphFamily family;
};

/// Random small-grid coverage problem: 1..max_agents agents with
/// 1..max_actions actions each; every action sees a random rectangle (at
/// least one road cell) of a mostly-road grid. The graph family is random.
inline SmallInstance random_small_instance(std::mt19937_64& rng, int max_agents, int max_actions) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = uni(1, max_agents);
  const int w = uni(5, 8), h = uni(5, 8);
  RoadMask mask(w, h, true);
  const double holes = std::uniform_real_distribution<double>(0.0, 0.4)(rng);
  for (int i = 0; i < mask.size(); ++i)
    if (std::bernoulli_distribution(holes)(rng)) mask.set(i, false);

  std::vector<int> counts;
  std::vector<std::vector<Cell>> footprints;
  for (int i = 0; i < n; ++i) {
    counts.push_back(uni(1, max_actions));
    for (int a = 0; a < counts.back(); ++a) {
      std::vector<Cell> fp;
      while (true) {
        const int fw = uni(1, 3), fh = uni(1, 3);
        const int x0 = uni(0, w - fw), y0 = uni(0, h - fh);
        fp.clear();
        bool any_road = false;
        for (int y = y0; y < y0 + fh; ++y)
          for (int x = x0; x < x0 + fw; ++x) {
            fp.push_back({x, y});
            any_road = any_road || mask.road(Cell{x, y});
          }
        if (any_road) break;
      }
      footprints.push_back(fp);
    }
  }

  const auto family = static_cast<GraphFamily>(uni(0, 5));
  MeshGraph g(n);
  switch (family) {
    case GraphFamily::kEmpty: g = empty_graph(n); break;
    case GraphFamily::kComplete: g = complete_graph(n); break;
    case GraphFamily::kLine: g = line_graph(n); break;
    case GraphFamily::kStar: g = star_graph(n, uni(0, n - 1)); break;
    case GraphFamily::kKnn: {
      std::vector<Point> pts;
      for (int i = 0; i < n; ++i)
        pts.push_back({std::uniform_real_distribution<double>(0, 10)(rng),
                       std::uniform_real_distribution<double>(0, 10)(rng)});
      g = knn_graph(pts, uni(0, n - 1), std::uniform_real_distribution<double>(2, 15)(rng));
      break;
    }
    case GraphFamily::kRandomDigraph:
      g = random_digraph(n, std::uniform_real_distribution<double>(0, 1)(rng), rng());
      break;
  }
  return {GridCoverageObjective(mask, counts, footprints), std::move(g), family};
}

}  // namespace ragsim
