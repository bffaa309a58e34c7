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

#ifndef OPTIKV_WIRE_HPP_
#define OPTIKV_WIRE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "optikv/hvc.hpp"
#include "optikv/predicate.hpp"
#include "optikv/store_types.hpp"

namespace optikv {

enum class MsgType { Get, GetVersion, Put, GetResp, PutAck, Cand, Viol };

const char* msg_type_name(MsgType t);
MsgType msg_type_from_name(const std::string& s);

/// A local detector's report: one truth interval of one predicate on one
/// server, with the relevant variable copies that held during it.
struct Candidate {
  std::string pred;
  NodeId server = 0;
  uint64_t seq = 0;
  HvcInterval interval;
  bool open = false;  // activation candidate whose closing stamp is pending
  ServerCopy state;
};

struct ViolationNotice {
  std::string pred;
  int64_t t_violate_ms = 0;
  int64_t detected_at_ms = 0;
};

struct Message {
  MsgType type = MsgType::Get;
  uint64_t req_id = 0;
  std::string key;
  std::vector<VersionedValue> versions;  // GET_RESP/GET payloads; PUT carries one
  bool ok = true;                        // replies: false signals a protocol error
  HybridVectorClock hvc;                 // sender stamp
  std::optional<Candidate> cand;
  std::optional<ViolationNotice> viol;
};

nlohmann::ordered_json hvc_to_json(const HybridVectorClock& c);
HybridVectorClock hvc_from_json(const nlohmann::json& j);

nlohmann::ordered_json version_vector_to_json(const VersionVector& v);
VersionVector version_vector_from_json(const nlohmann::json& j);

nlohmann::ordered_json versioned_value_to_json(const VersionedValue& v);
VersionedValue versioned_value_from_json(const nlohmann::json& j);

nlohmann::ordered_json message_to_json(const Message& m);
Message message_from_json(const nlohmann::json& j);

}  // namespace optikv

#endif  // OPTIKV_WIRE_HPP_
