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

#ifndef OPTIKV_STORE_TYPES_HPP_
#define OPTIKV_STORE_TYPES_HPP_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "optikv/hvc.hpp"

namespace optikv {

enum class VvOrder { Dominates, DominatedBy, Equal, Concurrent };

/// Per-client write counters describing the origin of a value. An absent
/// entry counts as zero.
struct VersionVector {
  std::map<NodeId, uint64_t> entries;

  uint64_t get(NodeId id) const {
    auto it = entries.find(id);
    return it == entries.end() ? 0 : it->second;
  }
  void bump(NodeId id) { ++entries[id]; }
  void merge_max(const VersionVector& other) {
    for (const auto& [id, n] : other.entries) {
      auto& mine = entries[id];
      if (n > mine) mine = n;
    }
  }
  uint64_t counter_sum() const {
    uint64_t s = 0;
    for (const auto& [id, n] : entries) s += n;
    return s;
  }

  friend bool operator==(const VersionVector&, const VersionVector&) = default;
};

VvOrder vv_compare(const VersionVector& a, const VersionVector& b);

struct VersionedValue {
  VersionVector version;
  std::string value;

  friend bool operator==(const VersionedValue&, const VersionedValue&) = default;
};

/// A key's concurrent versions. Inserting a version prunes everything it
/// dominates; a version dominated by (or equal to) a stored one is stale news
/// and is dropped, so the stored set stays pairwise concurrent.
struct KeyEntry {
  std::vector<VersionedValue> versions;

  void insert(const VersionedValue& incoming);
};

/// Merge several replicas' version lists into the pairwise-concurrent union.
std::vector<VersionedValue> merge_versions(const std::vector<VersionedValue>& a,
                                           const std::vector<VersionedValue>& b);

/// Deterministic conflict resolver: the version with the largest counter sum
/// wins; ties go to the version holding a strict maximum entry for the
/// smallest client id, then to the smaller value bytes.
VersionedValue resolve_versions(const std::vector<VersionedValue>& versions);

}  // namespace optikv

#endif  // OPTIKV_STORE_TYPES_HPP_
