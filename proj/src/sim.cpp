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

#include "optikv/sim.hpp"

namespace optikv {

size_t Simulator::run_until(SimTime t) {
  size_t n = 0;
  while (!queue_.empty() && queue_.top().at <= t) {
    Event ev = queue_.top();
    queue_.pop();
    now_ = ev.at;
    ev.fn();
    ++n;
  }
  if (t > now_) now_ = t;
  return n;
}

size_t Simulator::run_all() {
  size_t n = 0;
  while (!queue_.empty()) {
    Event ev = queue_.top();
    queue_.pop();
    now_ = ev.at;
    ev.fn();
    ++n;
  }
  return n;
}

double Topology::base_delay_ms(NodeId a, NodeId b) const {
  if (a == b) return 0;
  int ra = node_region.at(static_cast<size_t>(a));
  int rb = node_region.at(static_cast<size_t>(b));
  if (ra == rb) return intra_region_ms;
  return region_delay_ms.at(static_cast<size_t>(ra)).at(static_cast<size_t>(rb));
}

void Topology::validate() const {
  size_t r = region_delay_ms.size();
  for (const auto& row : region_delay_ms)
    if (row.size() != r) throw ConfigError("region delay matrix is not square");
  for (size_t i = 0; i < r; ++i) {
    if (region_delay_ms[i][i] != 0) throw ConfigError("region delay diagonal must be zero");
    for (size_t j = 0; j < r; ++j)
      if (region_delay_ms[i][j] != region_delay_ms[j][i])
        throw ConfigError("region delay matrix must be symmetric");
  }
  for (int reg : node_region)
    if (reg < 0 || static_cast<size_t>(reg) >= r)
      throw ConfigError("node assigned to unknown region");
}

double sample_delay_ms(const Topology& topo, const DelayModel& model, NodeId a, NodeId b,
                       std::mt19937_64& rng) {
  if (a == b) throw std::invalid_argument("sample_delay needs distinct nodes");
  std::gamma_distribution<double> gamma(model.gamma_shape, 1.0);
  double g = gamma(rng);
  return topo.base_delay_ms(a, b) * (1.0 + g * model.multiplier_ratio);
}

void TraceSink::append(TraceEvent ev) {
  ev.global_seq = next_global_++;
  events_.push_back(std::move(ev));
}

SimNet::SimNet(Simulator& sim, Topology topo, DelayModel model, uint64_t seed)
    : sim_(sim), topo_(std::move(topo)), model_(model), rng_(seed) {
  topo_.validate();
  model_.validate();
}

void SimNet::register_node(NodeId id, INode* node) {
  if (id < 0 || static_cast<size_t>(id) >= topo_.node_count())
    throw ConfigError("node id outside topology");
  nodes_[id] = node;
}

void SimNet::send(NodeId from, NodeId to, Message msg) {
  auto it = nodes_.find(to);
  if (it == nodes_.end()) throw ConfigError("send to unknown node " + std::to_string(to));
  INode* dest = it->second;

  auto chan = std::make_pair(from, to);
  uint64_t send_seq = channel_sends_[chan]++;

  double delay_ms = 0;
  if (auto ov = overrides_.find({from, to, send_seq}); ov != overrides_.end()) {
    delay_ms = ov->second.first;
    ov->second.second = true;
  } else if (from != to) {
    delay_ms = sample_delay_ms(topo_, model_, from, to, rng_);
  }

  SimTime deliver = sim_.now() + ms_to_us(delay_ms);
  auto last = channel_last_.find(chan);
  if (last != channel_last_.end() && deliver <= last->second) deliver = last->second + 1;
  channel_last_[chan] = deliver;

  uint64_t msg_id = next_msg_id_++;
  sim_.at(deliver, [dest, from, msg_id, m = std::move(msg)]() mutable {
    dest->on_message(from, msg_id, m);
  });
}

void SimNet::set_schedule(std::vector<ScheduleOverride> overrides) {
  for (const auto& o : overrides) overrides_[{o.from, o.to, o.seq}] = {o.delay_ms, false};
}

std::vector<ScheduleOverride> SimNet::unused_overrides() const {
  std::vector<ScheduleOverride> out;
  for (const auto& [key, val] : overrides_)
    if (!val.second)
      out.push_back(ScheduleOverride{std::get<0>(key), std::get<1>(key), std::get<2>(key),
                                     val.first});
  return out;
}

}  // namespace optikv
