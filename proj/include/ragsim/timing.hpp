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
#include <optional>
#include <span>
#include <stdexcept>

#include "ragsim/coordination.hpp"
#include "ragsim/topology.hpp"

namespace ragsim {

inline constexpr double kBitsPerByte = 8.0;
inline constexpr double kBytesPerKiB = 1024.0;
inline constexpr double kBpsPerMbps = 1e6;
/// Width of one exchanged gain value when tau_hash is derived from the rate.
inline constexpr double kScalarBits = 64.0;

/// Seconds to push `message_bytes` through a `data_rate_bps` link.
inline double tau_c_from_rate(double message_bytes, double data_rate_bps) {
  if (!(message_bytes > 0) || !(data_rate_bps > 0))
    throw std::domain_error("tau_c_from_rate: message size and data rate must be positive");
  return kBitsPerByte * message_bytes / data_rate_bps;
}

struct DelayModel {
  double tau_f = 0;     // one objective evaluation
  double tau_c = 0;     // one action over one hop
  double tau_hash = 0;  // one scalar over one hop
  std::optional<double> message_bytes;
  std::optional<double> data_rate_bps;

  void validate() const {
    if (tau_f < 0 || tau_c < 0 || tau_hash < 0)
      throw std::domain_error("delay model: delays must be non-negative");
  }

  static DelayModel explicit_delays(double tau_f, double tau_c, double tau_hash) {
    DelayModel d{tau_f, tau_c, tau_hash, std::nullopt, std::nullopt};
    d.validate();
    return d;
  }

  /// tau_c from message size and rate. A negative tau_hash means "one 64-bit
  /// scalar at the same rate".
  static DelayModel from_rate(double message_bytes, double data_rate_bps, double tau_f,
                              double tau_hash = -1) {
    DelayModel d;
    d.tau_f = tau_f;
    d.tau_c = tau_c_from_rate(message_bytes, data_rate_bps);
    d.tau_hash = tau_hash < 0 ? kScalarBits / data_rate_bps : tau_hash;
    d.message_bytes = message_bytes;
    d.data_rate_bps = data_rate_bps;
    d.validate();
    return d;
  }
};

/// Simulated time split by cost kind, plus the unit counts behind each term
/// (compute_units is in evaluations, the other two in rounds/transmissions).
struct TimeBreakdown {
  double compute_s = 0;
  double gain_s = 0;
  double action_s = 0;
  long long compute_units = 0;
  long long gain_units = 0;
  long long action_units = 0;

  double total() const { return compute_s + gain_s + action_s; }
};

inline TimeBreakdown rag_time_breakdown(const CoordinationOutcome& outcome, const DelayModel& dm,
                                        std::span<const int> action_counts) {
  if (outcome.algorithm != Algorithm::kRag)
    throw std::logic_error("rag_decision_time: outcome was not produced by run_rag");
  TimeBreakdown t;
  for (const auto& ev : outcome.events) {
    int widest = 0;
    for (int i : ev.recomputed) widest = std::max(widest, action_counts[i]);
    t.compute_units += widest;
    if (ev.gains_exchanged) ++t.gain_units;
    if (ev.broadcast_occurred) ++t.action_units;
  }
  t.compute_s = dm.tau_f * static_cast<double>(t.compute_units);
  t.gain_s = dm.tau_hash * static_cast<double>(t.gain_units);
  t.action_s = dm.tau_c * static_cast<double>(t.action_units);
  return t;
}

/// Parallel compute within an iteration (max), one tau_hash per gain round,
/// one tau_c per action round.
inline double rag_decision_time(const CoordinationOutcome& outcome, const DelayModel& dm,
                                std::span<const int> action_counts) {
  return rag_time_breakdown(outcome, dm, action_counts).total();
}

inline TimeBreakdown sg_time_breakdown(const CoordinationOutcome& outcome, const DelayModel& dm,
                                       std::span<const int> action_counts) {
  if (outcome.algorithm != Algorithm::kSg && outcome.algorithm != Algorithm::kDfsSg)
    throw std::logic_error("sg_decision_time: outcome was not produced by run_sg or run_dfs_sg");
  TimeBreakdown t;
  for (int c : action_counts) t.compute_units += c;
  t.action_units = outcome.relay_action_transmissions;
  t.compute_s = dm.tau_f * static_cast<double>(t.compute_units);
  t.action_s = dm.tau_c * static_cast<double>(t.action_units);
  return t;
}

/// Sequential compute (sum) plus tau_c per action per hop.
inline double sg_decision_time(const CoordinationOutcome& outcome, const DelayModel& dm,
                               std::span<const int> action_counts) {
  return sg_time_breakdown(outcome, dm, action_counts).total();
}

/// Closed-form worst-case RAG decision time:
///   (tau_c + tau_hash)(n - 1) + tau_f * max_i |V_i| * max(1, |N_i|).
/// Note: this form does not dominate the simulated time in general; an agent
/// may recompute in up to n iterations. See rag_time_envelope.
inline double rag_time_bound(const MeshGraph& g, const DelayModel& dm,
                             std::span<const int> action_counts) {
  const int n = g.size();
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    const double nbrs = std::max<std::size_t>(1, g.in(i).size());
    worst = std::max(worst, action_counts[i] * nbrs);
  }
  return (dm.tau_c + dm.tau_hash) * std::max(0, n - 1) + dm.tau_f * worst;
}

/// A bound that does dominate the simulated RAG time: at most n iterations,
/// each with at most one compute phase, one gain round and one action round,
/// and at most n - 1 of the rounds of each kind.
inline double rag_time_envelope(const MeshGraph& g, const DelayModel& dm,
                                std::span<const int> action_counts) {
  const int n = g.size();
  int widest = 0;
  for (int c : action_counts) widest = std::max(widest, c);
  return (dm.tau_c + dm.tau_hash) * std::max(0, n - 1) + dm.tau_f * widest * n;
}

}  // namespace ragsim
