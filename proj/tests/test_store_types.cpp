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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "optikv/store_types.hpp"

using namespace optikv;

namespace {

VersionVector vv(std::initializer_list<std::pair<NodeId, uint64_t>> xs) {
  VersionVector v;
  for (auto [id, n] : xs) v.entries[id] = n;
  return v;
}

}  // namespace

TEST_CASE("version vector comparison treats absent entries as zero") {
  CHECK(vv_compare(vv({{0, 1}}), vv({{0, 1}})) == VvOrder::Equal);
  CHECK(vv_compare(vv({{0, 2}}), vv({{0, 1}})) == VvOrder::Dominates);
  CHECK(vv_compare(vv({{0, 1}}), vv({{0, 1}, {1, 1}})) == VvOrder::DominatedBy);
  CHECK(vv_compare(vv({{0, 1}}), vv({{1, 1}})) == VvOrder::Concurrent);
}

TEST_CASE("key entry keeps only pairwise concurrent versions") {
  KeyEntry e;
  e.insert({vv({{0, 1}}), "v1"});
  e.insert({vv({{0, 2}}), "v2"});
  REQUIRE(e.versions.size() == 1);
  CHECK(e.versions[0].value == "v2");

  e.insert({vv({{1, 1}}), "v3"});
  CHECK(e.versions.size() == 2);

  // stale news is dropped
  e.insert({vv({{0, 1}}), "v1"});
  CHECK(e.versions.size() == 2);

  // a dominating merge collapses everything
  e.insert({vv({{0, 2}, {1, 1}}), "v4"});
  REQUIRE(e.versions.size() == 1);
  CHECK(e.versions[0].value == "v4");
}

TEST_CASE("random insert sequences stay pairwise concurrent") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    KeyEntry e;
    for (int i = 0; i < 30; ++i) {
      VersionVector v;
      for (NodeId c = 0; c < 3; ++c)
        if (rng() % 2) v.entries[c] = rng() % 4;
      e.insert({v, std::to_string(i)});
    }
    for (size_t i = 0; i < e.versions.size(); ++i)
      for (size_t j = i + 1; j < e.versions.size(); ++j)
        CHECK(vv_compare(e.versions[i].version, e.versions[j].version) == VvOrder::Concurrent);
  }
}

TEST_CASE("resolve_versions picks the largest counter sum") {
  auto winner = resolve_versions({{vv({{0, 2}}), "a"}, {vv({{1, 1}}), "b"}});
  CHECK(winner.value == "a");
  CHECK(resolve_versions({{vv({{0, 1}}), "only"}}).value == "only");
}

TEST_CASE("resolve_versions tie goes to the smallest strict-max client") {
  auto winner = resolve_versions({{vv({{1, 1}}), "b"}, {vv({{0, 1}}), "a"}});
  CHECK(winner.value == "a");
}

TEST_CASE("resolve_versions is permutation invariant") {
  std::vector<VersionedValue> vs = {
      {vv({{0, 1}, {2, 1}}), "x"}, {vv({{1, 2}}), "y"}, {vv({{3, 1}, {4, 1}}), "z"}};
  auto expect = resolve_versions(vs);
  std::sort(vs.begin(), vs.end(), [](auto& a, auto& b) { return a.value < b.value; });
  do {
    CHECK(resolve_versions(vs) == expect);
  } while (std::next_permutation(vs.begin(), vs.end(), [](auto& a, auto& b) {
    return a.value < b.value;
  }));
}

TEST_CASE("resolve_versions rejects empty input") {
  CHECK_THROWS_AS((void)resolve_versions({}), std::invalid_argument);
}
