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

#ifndef OPTIKV_HVC_HPP_
#define OPTIKV_HVC_HPP_

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace optikv {

using NodeId = int32_t;

/// Sentinel for an unbounded clock-synchronization error: the hybrid vector
/// clock degenerates to a plain vector clock.
inline constexpr int64_t kInfiniteEpsilon = std::numeric_limits<int64_t>::max();

struct ClockRegressionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ClockDecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IntervalDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One clock cell: last known physical time of a process plus a tiebreak
/// counter so that several local stampings within the same millisecond stay
/// strictly ordered.
struct HvcEntry {
  int64_t time_ms = 0;
  uint32_t counter = 0;

  friend constexpr auto operator<=>(const HvcEntry&, const HvcEntry&) = default;
};

enum class ClockOrder { Before, After, Concurrent, Equal };

/// Hybrid vector clock over a fixed process universe. Immutable after
/// construction; the stamping operations return a new clock.
class HybridVectorClock {
 public:
  HybridVectorClock() = default;
  HybridVectorClock(NodeId owner, size_t universe, int64_t epsilon_ms)
      : owner_(owner), epsilon_ms_(epsilon_ms), entries_(universe) {
    if (owner < 0 || static_cast<size_t>(owner) >= universe)
      throw std::invalid_argument("hvc owner outside process universe");
  }

  NodeId owner() const { return owner_; }
  size_t size() const { return entries_.size(); }
  int64_t epsilon_ms() const { return epsilon_ms_; }
  const HvcEntry& entry(NodeId id) const { return entries_.at(static_cast<size_t>(id)); }
  const HvcEntry& own_entry() const { return entries_[static_cast<size_t>(owner_)]; }
  const std::vector<HvcEntry>& entries() const { return entries_; }

  /// Local/send stamping: the owner cell advances to `now_ms` (counter breaks
  /// a same-millisecond tie) and, with finite epsilon, every other cell is
  /// lifted to the floor `now_ms - epsilon`.
  HybridVectorClock stamped_send(int64_t now_ms) const;

  /// Receive stamping: like stamped_send, but every non-owner cell also takes
  /// the max with the piggybacked clock. The max with the prior cell keeps the
  /// clock monotone even when the message carries older knowledge.
  HybridVectorClock stamped_receive(const HybridVectorClock& msg, int64_t now_ms) const;

  /// Raw cell store, for tests and decode.
  static HybridVectorClock from_entries(NodeId owner, std::vector<HvcEntry> entries,
                                        int64_t epsilon_ms);

  /// Compact wire form: varint owner id, an n-bit presence mask (big-endian,
  /// padded to whole bytes), then varint (time_ms, counter) pairs for the
  /// present cells in ascending process-id order. Cells equal to the implicit
  /// floor (owner time minus epsilon, counter 0) are omitted.
  std::vector<uint8_t> encode_compact() const;
  static HybridVectorClock decode_compact(const uint8_t* data, size_t len, size_t universe,
                                          int64_t epsilon_ms);
  static HybridVectorClock decode_compact(const std::vector<uint8_t>& bytes, size_t universe,
                                          int64_t epsilon_ms) {
    return decode_compact(bytes.data(), bytes.size(), universe, epsilon_ms);
  }

  friend bool operator==(const HybridVectorClock& a, const HybridVectorClock& b) {
    return a.owner_ == b.owner_ && a.epsilon_ms_ == b.epsilon_ms_ && a.entries_ == b.entries_;
  }

  std::string to_string() const;

 private:
  NodeId owner_ = 0;
  int64_t epsilon_ms_ = kInfiniteEpsilon;
  std::vector<HvcEntry> entries_;
};

/// Elementwise comparison over (time, counter) cells.
ClockOrder compare(const HybridVectorClock& a, const HybridVectorClock& b);

/// A server's local truth interval, bounded by the clock stamps of the state
/// changes that opened and closed it.
struct HvcInterval {
  NodeId server = 0;
  HybridVectorClock start;
  HybridVectorClock end;
};

enum class IntervalOrder { Before, After, Concurrent };

/// Causality of two candidate intervals from distinct servers. Overlapping
/// intervals are Concurrent; an interval whose end precedes the other's start
/// is Before only when the owners' physical stamps differ by more than
/// epsilon (with infinite epsilon the clock comparison itself is exact, so
/// Before follows from it directly). The uncertain case stays Concurrent.
IntervalOrder interval_relation(const HvcInterval& i1, const HvcInterval& i2,
                                int64_t epsilon_ms);

}  // namespace optikv

#endif  // OPTIKV_HVC_HPP_
