/*
 * Copyright 2026 The OptiKV Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef OPTIKV_SIM_HPP_
#define OPTIKV_SIM_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

#include "optikv/wire.hpp"

namespace optikv {

/// Simulated time in microseconds.
using SimTime = int64_t;

inline constexpr SimTime kUsPerMs = 1000;

inline SimTime ms_to_us(double ms) { return static_cast<SimTime>(ms * 1000.0 + 0.5); }

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic discrete-event loop. Events fire in (time, insertion)
/// order; identical schedules replay identically.
class Simulator {
 public:
  SimTime now() const { return now_; }

  void at(SimTime t, std::function<void()> fn) {
    if (t < now_) t = now_;
    queue_.push(Event{t, next_seq_++, std::move(fn)});
  }
  void in(SimTime delta, std::function<void()> fn) { at(now_ + delta, std::move(fn)); }

  /// Drain events with fire time <= t, then advance the clock to t.
  size_t run_until(SimTime t);

  /// Drain everything.
  size_t run_all();

  bool empty() const { return queue_.empty(); }

 private:
  struct Event {
    SimTime at;
    uint64_t seq;
    std::function<void()> fn;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.at != b.at ? a.at > b.at : a.seq > b.seq;
    }
  };

  SimTime now_ = 0;
  uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
};

/// Regions and the deterministic one-way delay matrix between them.
struct Topology {
  std::vector<int> node_region;                       // index: node id
  std::vector<std::vector<double>> region_delay_ms;   // one-way, symmetric, zero diagonal
  double intra_region_ms = 1.0;

  size_t node_count() const { return node_region.size(); }
  double base_delay_ms(NodeId a, NodeId b) const;
  void validate() const;
};

struct DelayModel {
  double gamma_shape = 0.8;
  double multiplier_ratio = 0.2;

  void validate() const {
    if (gamma_shape < 0.6 || gamma_shape > 1.0)
      throw ConfigError("gamma shape outside [0.6, 1.0]");
  }
};

/// One stochastic delay draw: D = D^d * (1 + sample * ratio).
double sample_delay_ms(const Topology& topo, const DelayModel& model, NodeId a, NodeId b,
                       std::mt19937_64& rng);

struct ScheduleOverride {
  NodeId from = 0;
  NodeId to = 0;
  uint64_t seq = 0;  // per-channel send index, 0-based
  double delay_ms = 0;
};

struct TraceEvent {
  NodeId node = 0;
  uint64_t seq = 0;  // per-node event index
  std::string kind;  // send | receive | put_applied
  SimTime t_us = 0;
  uint64_t global_seq = 0;
  uint64_t msg_id = 0;  // 0 when not message-related
  std::string var;      // put_applied only
  std::string value;    // resolved copy after the put
  HybridVectorClock hvc;
};

/// Shared recorder; nodes append their own events in execution order.
class TraceSink {
 public:
  void append(TraceEvent ev);
  const std::vector<TraceEvent>& events() const { return events_; }
  uint64_t next_node_seq(NodeId node) { return node_seq_[node]++; }

 private:
  std::vector<TraceEvent> events_;
  std::map<NodeId, uint64_t> node_seq_;
  uint64_t next_global_ = 0;
};

class INode {
 public:
  virtual ~INode() = default;
  virtual void on_message(NodeId from, uint64_t msg_id, const Message& msg) = 0;
};

/// Message transport over the simulator: per-pair gamma-delayed channels with
/// TCP-like FIFO delivery and optional per-message scripted delays.
class SimNet {
 public:
  SimNet(Simulator& sim, Topology topo, DelayModel model, uint64_t seed);

  void register_node(NodeId id, INode* node);
  void send(NodeId from, NodeId to, Message msg);

  void set_schedule(std::vector<ScheduleOverride> overrides);
  std::vector<ScheduleOverride> unused_overrides() const;

  Simulator& sim() { return sim_; }
  const Topology& topology() const { return topo_; }
  std::mt19937_64& rng() { return rng_; }

  uint64_t messages_sent() const { return next_msg_id_ - 1; }

 private:
  Simulator& sim_;
  Topology topo_;
  DelayModel model_;
  std::mt19937_64 rng_;
  std::map<NodeId, INode*> nodes_;
  std::map<std::pair<NodeId, NodeId>, SimTime> channel_last_;
  std::map<std::pair<NodeId, NodeId>, uint64_t> channel_sends_;
  std::map<std::tuple<NodeId, NodeId, uint64_t>, std::pair<double, bool>> overrides_;
  uint64_t next_msg_id_ = 1;
};

}  // namespace optikv

#endif  // OPTIKV_SIM_HPP_
