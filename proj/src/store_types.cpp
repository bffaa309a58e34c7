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

#include "optikv/store_types.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace optikv {

VvOrder vv_compare(const VersionVector& a, const VersionVector& b) {
  bool a_greater = false, b_greater = false;
  std::set<NodeId> ids;
  for (const auto& [id, _] : a.entries) ids.insert(id);
  for (const auto& [id, _] : b.entries) ids.insert(id);
  for (NodeId id : ids) {
    uint64_t va = a.get(id), vb = b.get(id);
    if (va > vb) a_greater = true;
    if (vb > va) b_greater = true;
  }
  if (a_greater && b_greater) return VvOrder::Concurrent;
  if (a_greater) return VvOrder::Dominates;
  if (b_greater) return VvOrder::DominatedBy;
  return VvOrder::Equal;
}

void KeyEntry::insert(const VersionedValue& incoming) {
  for (const auto& v : versions) {
    VvOrder o = vv_compare(incoming.version, v.version);
    if (o == VvOrder::DominatedBy || o == VvOrder::Equal) return;
  }
  std::erase_if(versions, [&](const VersionedValue& v) {
    return vv_compare(incoming.version, v.version) == VvOrder::Dominates;
  });
  versions.push_back(incoming);
}

std::vector<VersionedValue> merge_versions(const std::vector<VersionedValue>& a,
                                           const std::vector<VersionedValue>& b) {
  KeyEntry acc;
  for (const auto& v : a) acc.insert(v);
  for (const auto& v : b) acc.insert(v);
  return acc.versions;
}

VersionedValue resolve_versions(const std::vector<VersionedValue>& versions) {
  if (versions.empty()) throw std::invalid_argument("resolve_versions on empty list");
  if (versions.size() == 1) return versions.front();

  // Strict-maximum holder: the smallest client id at which this version
  // strictly exceeds every other candidate; absent when there is none.
  auto strict_max_holder = [&](size_t i) -> int64_t {
    std::set<NodeId> ids;
    for (const auto& v : versions)
      for (const auto& [id, _] : v.version.entries) ids.insert(id);
    for (NodeId id : ids) {
      uint64_t mine = versions[i].version.get(id);
      bool strict = true;
      for (size_t j = 0; j < versions.size(); ++j)
        if (j != i && versions[j].version.get(id) >= mine) strict = false;
      if (strict) return id;
    }
    return std::numeric_limits<int64_t>::max();
  };

  size_t best = 0;
  for (size_t i = 1; i < versions.size(); ++i) {
    uint64_t si = versions[i].version.counter_sum();
    uint64_t sb = versions[best].version.counter_sum();
    if (si != sb) {
      if (si > sb) best = i;
      continue;
    }
    int64_t hi = strict_max_holder(i), hb = strict_max_holder(best);
    if (hi != hb) {
      if (hi < hb) best = i;
      continue;
    }
    if (versions[i].value < versions[best].value) best = i;
  }
  return versions[best];
}

}  // namespace optikv
