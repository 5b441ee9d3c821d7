#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dimsum/op_counter.hpp"
#include "dimsum/types.hpp"

namespace dimsum {

/// Bounded map FlowId -> Volume.
///
/// Open addressing with linear probing over a power-of-two slot array (load
/// factor <= 1/2) plus dense key/value arrays, so iteration costs O(size) and
/// clear() is O(1): every slot carries an epoch stamp and a bump of the epoch
/// empties the whole table. Entries removed by an in-progress drain leave a
/// tombstone so the remaining keys stay reachable.
class FlowTable {
 public:
  explicit FlowTable(std::size_t capacity);

  std::optional<Volume> get(FlowId key) const;
  bool contains(FlowId key) const { return find(key) != kNotFound; }

  /// Insert or overwrite. Throws CapacityExceeded for a new key when full.
  void upsert(FlowId key, Volume value);

  /// Inserts only if `key` is absent; returns true if it inserted. One table op.
  bool insert_if_absent(FlowId key, Volume value);

  /// Removes everything in O(1).
  void clear();

  std::size_t size() const { return keys_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return keys_.empty(); }
  bool full() const { return keys_.size() == capacity_; }

  /// Entry access by dense position, 0 <= i < size(). Positions are stable
  /// while the table is not modified.
  FlowId key_at(std::size_t i) const { return keys_[i]; }
  Volume value_at(std::size_t i) const { return values_[i]; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < keys_.size(); ++i) fn(keys_[i], values_[i]);
  }

  void attach_counter(OpCounter* counter) { counter_ = counter; }

  /// Incremental removal of all entries. Each next() yields one entry and
  /// removes it; the table is empty once next() has returned nullopt.
  class Drain {
   public:
    std::optional<std::pair<FlowId, Volume>> next();

   private:
    friend class FlowTable;
    explicit Drain(FlowTable& table) : table_(&table) {}
    FlowTable* table_;
  };

  Drain drain() { return Drain(*this); }

 private:
  static constexpr std::size_t kNotFound = ~std::size_t{0};

  struct Slot {
    FlowId key = 0;
    std::uint64_t stamp = 0;  // live == 2*epoch, tombstone == 2*epoch+1, else empty
    std::uint32_t dense = 0;
  };

  static std::uint64_t mix(FlowId key) {
    key ^= key >> 33;
    key *= 0xff51afd7ed558ccdULL;
    key ^= key >> 33;
    key *= 0xc4ceb9fe1a85ec53ULL;
    key ^= key >> 33;
    return key;
  }

  std::uint64_t live_stamp() const { return epoch_ << 1; }
  std::uint64_t tomb_stamp() const { return (epoch_ << 1) | 1; }

  void count_op() const {
    if (counter_ != nullptr) ++counter_->table_ops;
  }

  // Slot index holding `key`, or kNotFound.
  std::size_t find(FlowId key) const;
  void place(FlowId key, Volume value, std::size_t slot);
  void rebuild();

  std::size_t capacity_;
  std::size_t mask_;
  std::uint64_t epoch_ = 1;
  std::size_t tombstones_ = 0;
  std::vector<Slot> slots_;
  std::vector<FlowId> keys_;
  std::vector<Volume> values_;
  std::vector<std::uint32_t> slot_of_;
  OpCounter* counter_ = nullptr;
};

inline std::size_t FlowTable::find(FlowId key) const {
  const std::uint64_t live = live_stamp();
  const std::uint64_t tomb = tomb_stamp();
  std::size_t i = mix(key) & mask_;
  while (true) {
    const Slot& s = slots_[i];
    if (s.stamp == live) {
      if (s.key == key) return i;
    } else if (s.stamp != tomb) {
      return kNotFound;
    }
    i = (i + 1) & mask_;
  }
}

inline std::optional<Volume> FlowTable::get(FlowId key) const {
  count_op();
  const std::size_t slot = find(key);
  if (slot == kNotFound) return std::nullopt;
  return values_[slots_[slot].dense];
}

}  // namespace dimsum
