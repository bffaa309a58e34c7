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

#include "optikv/hvc.hpp"

#include <algorithm>
#include <sstream>

namespace optikv {

namespace {

void append_varint(std::vector<uint8_t>& out, uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<uint8_t>(v) | 0x80);
    v >>= 7;
  }
  out.push_back(static_cast<uint8_t>(v));
}

uint64_t read_varint(const uint8_t* data, size_t len, size_t& pos) {
  uint64_t v = 0;
  int shift = 0;
  while (true) {
    if (pos >= len) throw ClockDecodeError("truncated varint");
    uint8_t b = data[pos++];
    v |= static_cast<uint64_t>(b & 0x7f) << shift;
    if (!(b & 0x80)) return v;
    shift += 7;
    if (shift > 63) throw ClockDecodeError("varint overflow");
  }
}

bool has_finite_epsilon(int64_t eps) { return eps != kInfiniteEpsilon; }

}  // namespace

HybridVectorClock HybridVectorClock::stamped_send(int64_t now_ms) const {
  const HvcEntry& own = own_entry();
  if (now_ms < own.time_ms)
    throw ClockRegressionError("local clock regressed below owner entry");
  HybridVectorClock r = *this;
  HvcEntry next{now_ms, now_ms == own.time_ms ? own.counter + 1 : 0};
  r.entries_[static_cast<size_t>(owner_)] = next;
  if (has_finite_epsilon(epsilon_ms_)) {
    HvcEntry floor{now_ms - epsilon_ms_, 0};
    for (size_t j = 0; j < r.entries_.size(); ++j) {
      if (j == static_cast<size_t>(owner_)) continue;
      r.entries_[j] = std::max(r.entries_[j], floor);
    }
  }
  return r;
}

HybridVectorClock HybridVectorClock::stamped_receive(const HybridVectorClock& msg,
                                                     int64_t now_ms) const {
  if (msg.size() != size() || msg.epsilon_ms_ != epsilon_ms_)
    throw std::invalid_argument("clocks from different configurations");
  const HvcEntry& own = own_entry();
  if (now_ms < own.time_ms)
    throw ClockRegressionError("local clock regressed below owner entry");
  HybridVectorClock r = *this;
  r.entries_[static_cast<size_t>(owner_)] =
      HvcEntry{now_ms, now_ms == own.time_ms ? own.counter + 1 : 0};
  HvcEntry floor{has_finite_epsilon(epsilon_ms_) ? now_ms - epsilon_ms_
                                                 : std::numeric_limits<int64_t>::min(),
                 0};
  for (size_t j = 0; j < r.entries_.size(); ++j) {
    if (j == static_cast<size_t>(owner_)) continue;
    r.entries_[j] = std::max({r.entries_[j], msg.entries_[j], floor});
  }
  return r;
}

HybridVectorClock HybridVectorClock::from_entries(NodeId owner, std::vector<HvcEntry> entries,
                                                  int64_t epsilon_ms) {
  HybridVectorClock c(owner, entries.size(), epsilon_ms);
  c.entries_ = std::move(entries);
  return c;
}

ClockOrder compare(const HybridVectorClock& a, const HybridVectorClock& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("clocks over different process universes");
  bool less = false, greater = false;
  for (size_t k = 0; k < a.size(); ++k) {
    const auto& ea = a.entries()[k];
    const auto& eb = b.entries()[k];
    if (ea < eb) less = true;
    else if (eb < ea) greater = true;
  }
  if (less && greater) return ClockOrder::Concurrent;
  if (less) return ClockOrder::Before;
  if (greater) return ClockOrder::After;
  return ClockOrder::Equal;
}

std::vector<uint8_t> HybridVectorClock::encode_compact() const {
  std::vector<uint8_t> out;
  append_varint(out, static_cast<uint64_t>(owner_));
  const size_t n = entries_.size();
  const size_t mask_bytes = (n + 7) / 8;
  std::vector<bool> present(n, true);
  if (has_finite_epsilon(epsilon_ms_)) {
    HvcEntry floor{own_entry().time_ms - epsilon_ms_, 0};
    for (size_t p = 0; p < n; ++p)
      present[p] = p == static_cast<size_t>(owner_) || !(entries_[p] == floor);
  }
  size_t mask_at = out.size();
  out.insert(out.end(), mask_bytes, 0);
  for (size_t p = 0; p < n; ++p)
    if (present[p]) out[mask_at + p / 8] |= static_cast<uint8_t>(0x80u >> (p % 8));
  for (size_t p = 0; p < n; ++p) {
    if (!present[p]) continue;
    if (entries_[p].time_ms < 0) throw ClockDecodeError("negative time not encodable");
    append_varint(out, static_cast<uint64_t>(entries_[p].time_ms));
    append_varint(out, entries_[p].counter);
  }
  return out;
}

HybridVectorClock HybridVectorClock::decode_compact(const uint8_t* data, size_t len,
                                                    size_t universe, int64_t epsilon_ms) {
  size_t pos = 0;
  uint64_t owner = read_varint(data, len, pos);
  if (owner >= universe) throw ClockDecodeError("owner outside process universe");
  const size_t mask_bytes = (universe + 7) / 8;
  if (pos + mask_bytes > len) throw ClockDecodeError("truncated presence mask");
  std::vector<bool> present(universe, false);
  for (size_t p = 0; p < universe; ++p)
    present[p] = (data[pos + p / 8] >> (7 - p % 8)) & 1;
  pos += mask_bytes;
  if (!present[owner]) throw ClockDecodeError("owner entry must be present");

  std::vector<HvcEntry> entries(universe);
  for (size_t p = 0; p < universe; ++p) {
    if (!present[p]) continue;
    int64_t t = static_cast<int64_t>(read_varint(data, len, pos));
    uint32_t c = static_cast<uint32_t>(read_varint(data, len, pos));
    entries[p] = HvcEntry{t, c};
  }
  if (pos != len) throw ClockDecodeError("trailing bytes after clock");
  if (has_finite_epsilon(epsilon_ms)) {
    HvcEntry floor{entries[owner].time_ms - epsilon_ms, 0};
    for (size_t p = 0; p < universe; ++p)
      if (!present[p]) entries[p] = floor;
  } else {
    for (size_t p = 0; p < universe; ++p)
      if (!present[p]) throw ClockDecodeError("implicit entries need finite epsilon");
  }
  return from_entries(static_cast<NodeId>(owner), std::move(entries), epsilon_ms);
}

std::string HybridVectorClock::to_string() const {
  std::ostringstream os;
  os << "hvc(o=" << owner_ << ",[";
  for (size_t k = 0; k < entries_.size(); ++k) {
    if (k) os << " ";
    os << entries_[k].time_ms;
    if (entries_[k].counter) os << "+" << entries_[k].counter;
  }
  os << "])";
  return os.str();
}

IntervalOrder interval_relation(const HvcInterval& i1, const HvcInterval& i2,
                                int64_t epsilon_ms) {
  if (i1.server == i2.server)
    throw IntervalDomainError("per-server intervals are totally ordered, not compared here");

  const HvcInterval* a = &i1;
  const HvcInterval* b = &i2;
  bool flipped = false;
  if (compare(i1.start, i2.start) == ClockOrder::After) {
    std::swap(a, b);
    flipped = true;
  }

  ClockOrder end_vs_start = compare(a->end, b->start);
  if (end_vs_start != ClockOrder::Before) return IntervalOrder::Concurrent;
  if (has_finite_epsilon(epsilon_ms)) {
    int64_t end_owner = a->end.entry(a->server).time_ms;
    int64_t start_owner = b->start.entry(b->server).time_ms;
    if (!(end_owner < start_owner - epsilon_ms)) return IntervalOrder::Concurrent;
  }
  return flipped ? IntervalOrder::After : IntervalOrder::Before;
}

}  // namespace optikv
