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

#include <string>

#include "json.hpp"
#include "ragsim/bounds.hpp"
#include "ragsim/coordination.hpp"
#include "ragsim/scenario.hpp"

namespace ragsim {

using Json = nlohmann::ordered_json;

inline Json to_json(const CoordinationOutcome& out) {
  Json j;
  j["algorithm"] = std::string(to_string(out.algorithm));
  Json actions = Json::array();
  for (const auto& e : out.actions) actions.push_back({{"agent", e.agent}, {"action", e.action}});
  j["actions"] = std::move(actions);
  j["value"] = out.value;
  j["selection_order"] = out.selection_order;
  j["eval_counts"] = out.eval_counts;
  j["context_evals"] = out.context_evals;
  j["committed_neighbors"] = out.committed_neighbors;
  j["gain_rounds"] = out.gain_rounds;
  j["action_rounds"] = out.action_rounds;
  j["relay_action_transmissions"] = out.relay_action_transmissions;
  if (!out.order.empty()) j["order"] = out.order;
  Json events = Json::array();
  for (const auto& ev : out.events)
    events.push_back({{"iteration", ev.iteration},
                      {"recomputed", ev.recomputed},
                      {"gains_exchanged", ev.gains_exchanged},
                      {"selectors", ev.selectors},
                      {"broadcast_occurred", ev.broadcast_occurred}});
  j["events"] = std::move(events);
  return j;
}

inline Json to_json(const BoundReport& r) {
  Json j{{"algorithm_value", r.algorithm_value},
         {"optimum_value", r.optimum_value},
         {"certified", r.certified},
         {"apriori", r.apriori},
         {"apriori_centralized", r.apriori_centralized},
         {"apriori_decentralized_floor", r.apriori_decentralized_floor},
         {"aposteriori", r.aposteriori},
         {"approx_greedy", r.approx_greedy},
         {"coin_sum", r.coin_sum},
         {"committed_gain_sum", r.committed_gain_sum},
         {"kappa", r.kappa},
         {"eta", r.eta}};
  j["curvature_ratio_bound"] = r.curvature_ratio_bound ? Json(*r.curvature_ratio_bound) : Json(nullptr);
  j["c_total"] = r.c_total ? Json(*r.c_total) : Json(nullptr);
  return j;
}

inline Json to_json(const MeanStd& m) { return {{"mean", m.mean}, {"stddev", m.stddev}}; }

}  // namespace ragsim
