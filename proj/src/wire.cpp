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

#include "optikv/wire.hpp"

namespace optikv {

using nlohmann::json;
using nlohmann::ordered_json;

const char* msg_type_name(MsgType t) {
  switch (t) {
    case MsgType::Get: return "GET";
    case MsgType::GetVersion: return "GET_VERSION";
    case MsgType::Put: return "PUT";
    case MsgType::GetResp: return "GET_RESP";
    case MsgType::PutAck: return "PUT_ACK";
    case MsgType::Cand: return "CAND";
    case MsgType::Viol: return "VIOL";
  }
  return "?";
}

MsgType msg_type_from_name(const std::string& s) {
  if (s == "GET") return MsgType::Get;
  if (s == "GET_VERSION") return MsgType::GetVersion;
  if (s == "PUT") return MsgType::Put;
  if (s == "GET_RESP") return MsgType::GetResp;
  if (s == "PUT_ACK") return MsgType::PutAck;
  if (s == "CAND") return MsgType::Cand;
  if (s == "VIOL") return MsgType::Viol;
  throw std::invalid_argument("unknown message type " + s);
}

ordered_json hvc_to_json(const HybridVectorClock& c) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : c.entries()) entries.push_back({e.time_ms, e.counter});
  ordered_json j;
  j["owner"] = c.owner();
  j["eps"] = c.epsilon_ms() == kInfiniteEpsilon ? ordered_json("inf")
                                                : ordered_json(c.epsilon_ms());
  j["entries"] = std::move(entries);
  return j;
}

HybridVectorClock hvc_from_json(const json& j) {
  int64_t eps = kInfiniteEpsilon;
  if (!j.at("eps").is_string()) eps = j.at("eps").get<int64_t>();
  std::vector<HvcEntry> entries;
  for (const auto& e : j.at("entries"))
    entries.push_back(HvcEntry{e.at(0).get<int64_t>(), e.at(1).get<uint32_t>()});
  return HybridVectorClock::from_entries(j.at("owner").get<NodeId>(), std::move(entries), eps);
}

ordered_json version_vector_to_json(const VersionVector& v) {
  ordered_json j = ordered_json::object();
  for (const auto& [id, n] : v.entries) j[std::to_string(id)] = n;
  return j;
}

VersionVector version_vector_from_json(const json& j) {
  VersionVector v;
  for (auto it = j.begin(); it != j.end(); ++it)
    v.entries[static_cast<NodeId>(std::stol(it.key()))] = it.value().get<uint64_t>();
  return v;
}

ordered_json versioned_value_to_json(const VersionedValue& v) {
  ordered_json j;
  j["version"] = version_vector_to_json(v.version);
  j["value"] = v.value;
  return j;
}

VersionedValue versioned_value_from_json(const json& j) {
  return VersionedValue{version_vector_from_json(j.at("version")), j.at("value").get<std::string>()};
}

ordered_json message_to_json(const Message& m) {
  ordered_json j;
  j["type"] = msg_type_name(m.type);
  if (m.type == MsgType::Cand) {
    const Candidate& c = *m.cand;
    j["pred"] = c.pred;
    j["server"] = c.server;
    j["seq"] = c.seq;
    j["start_hvc"] = hvc_to_json(c.interval.start);
    j["end_hvc"] = hvc_to_json(c.interval.end);
    j["open"] = c.open;
    j["state"] = c.state;
    return j;
  }
  if (m.type == MsgType::Viol) {
    j["pred"] = m.viol->pred;
    j["t_violate_ms"] = m.viol->t_violate_ms;
    j["detected_at_ms"] = m.viol->detected_at_ms;
    return j;
  }
  j["key"] = m.key;
  if (!m.versions.empty()) {
    ordered_json vs = ordered_json::array();
    for (const auto& v : m.versions) vs.push_back(versioned_value_to_json(v));
    j["versions"] = std::move(vs);
  }
  if (m.type == MsgType::GetResp || m.type == MsgType::PutAck) j["ok"] = m.ok;
  j["hvc"] = hvc_to_json(m.hvc);
  j["req_id"] = m.req_id;
  return j;
}

Message message_from_json(const json& j) {
  Message m;
  m.type = msg_type_from_name(j.at("type").get<std::string>());
  if (m.type == MsgType::Cand) {
    Candidate c;
    c.pred = j.at("pred").get<std::string>();
    c.server = j.at("server").get<NodeId>();
    c.seq = j.at("seq").get<uint64_t>();
    c.interval.server = c.server;
    c.interval.start = hvc_from_json(j.at("start_hvc"));
    c.interval.end = hvc_from_json(j.at("end_hvc"));
    c.open = j.value("open", false);
    for (auto it = j.at("state").begin(); it != j.at("state").end(); ++it)
      c.state[it.key()] = it.value().get<std::string>();
    m.cand = std::move(c);
    return m;
  }
  if (m.type == MsgType::Viol) {
    m.viol = ViolationNotice{j.at("pred").get<std::string>(), j.at("t_violate_ms").get<int64_t>(),
                             j.at("detected_at_ms").get<int64_t>()};
    return m;
  }
  m.key = j.value("key", std::string());
  if (j.contains("versions"))
    for (const auto& v : j.at("versions")) m.versions.push_back(versioned_value_from_json(v));
  m.ok = j.value("ok", true);
  if (j.contains("hvc")) m.hvc = hvc_from_json(j.at("hvc"));
  m.req_id = j.value("req_id", uint64_t{0});
  return m;
}

}  // namespace optikv
