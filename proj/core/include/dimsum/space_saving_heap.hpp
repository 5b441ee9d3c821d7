#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dimsum/op_counter.hpp"
#include "dimsum/types.hpp"

namespace dimsum {

/// Weighted Space Saving over a binary min-heap of counters (SSH).
/// O(log capacity) per update; f <= query <= f + R/capacity.
class SpaceSavingHeap {
 public:
  explicit SpaceSavingHeap(std::size_t capacity);

  /// capacity = ceil(1/epsilon)
  static SpaceSavingHeap for_epsilon(double epsilon);

  void update(FlowId id, Volume weight);

  /// Stored estimate if resident, else the heap minimum (0 when empty).
  Volume query(FlowId id) const;

  std::vector<FlowId> elephants(double theta) const;

  Volume total_weight() const { return total_; }
  std::size_t size() const { return heap_.size(); }
  std::size_t capacity() const { return capacity_; }
  Volume min_estimate() const { return heap_.empty() ? 0 : heap_.front().estimate; }

  /// Heap order and index consistency; used by tests.
  bool audit() const;

  void attach_counter(OpCounter* counter) { counter_ = counter; }

 private:
  struct Counter {
    Volume estimate;
    FlowId id;
  };

  void sift_down(std::size_t pos);
  void sift_up(std::size_t pos);
  void place(std::size_t pos, const Counter& c);

  void count_heap(std::uint64_t n = 1) {
    if (counter_ != nullptr) counter_->heap_ops += n;
  }
  void count_table() const {
    if (counter_ != nullptr) ++counter_->table_ops;
  }

  std::size_t capacity_;
  std::vector<Counter> heap_;
  std::unordered_map<FlowId, std::size_t> index_;
  Volume total_ = 0;
  OpCounter* counter_ = nullptr;
};

}  // namespace dimsum
