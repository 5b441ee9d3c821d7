#include "dimsum/space_saving_heap.hpp"

#include <algorithm>

#include "dimsum/exact_math.hpp"

namespace dimsum {

SpaceSavingHeap::SpaceSavingHeap(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ParameterError("Space Saving capacity must be positive");
  heap_.reserve(capacity);
  index_.reserve(capacity * 2);
}

SpaceSavingHeap SpaceSavingHeap::for_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0)) throw ParameterError("epsilon must lie in (0, 1]");
  return SpaceSavingHeap(exact_ceil_ratio(1.0, epsilon));
}

void SpaceSavingHeap::place(std::size_t pos, const Counter& c) {
  heap_[pos] = c;
  index_[c.id] = pos;
}

void SpaceSavingHeap::sift_down(std::size_t pos) {
  const std::size_t n = heap_.size();
  const Counter item = heap_[pos];
  while (true) {
    const std::size_t left = 2 * pos + 1;
    if (left >= n) break;
    std::size_t child = left;
    if (left + 1 < n) {
      count_heap();
      if (heap_[left + 1].estimate < heap_[left].estimate) child = left + 1;
    }
    count_heap();
    if (heap_[child].estimate >= item.estimate) break;
    count_heap();
    place(pos, heap_[child]);
    pos = child;
  }
  place(pos, item);
}

void SpaceSavingHeap::sift_up(std::size_t pos) {
  const Counter item = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    count_heap();
    if (heap_[parent].estimate <= item.estimate) break;
    count_heap();
    place(pos, heap_[parent]);
    pos = parent;
  }
  place(pos, item);
}

void SpaceSavingHeap::update(FlowId id, Volume weight) {
  UpdateScope scope(counter_);
  total_ = checked_add(total_, weight, "total weight R");
  count_table();
  if (const auto it = index_.find(id); it != index_.end()) {
    const std::size_t pos = it->second;
    heap_[pos].estimate = checked_add(heap_[pos].estimate, weight, "flow estimate");
    sift_down(pos);
    return;
  }
  if (heap_.size() < capacity_) {
    heap_.push_back({weight, id});
    index_[id] = heap_.size() - 1;
    sift_up(heap_.size() - 1);
    return;
  }
  const Counter victim = heap_.front();
  count_table();
  index_.erase(victim.id);
  heap_.front() = {checked_add(victim.estimate, weight, "flow estimate"), id};
  index_[id] = 0;
  sift_down(0);
}

Volume SpaceSavingHeap::query(FlowId id) const {
  count_table();
  if (const auto it = index_.find(id); it != index_.end()) return heap_[it->second].estimate;
  return min_estimate();
}

std::vector<FlowId> SpaceSavingHeap::elephants(double theta) const {
  if (!(theta > 0.0) || !(theta <= 1.0)) throw ParameterError("theta must lie in (0, 1]");
  std::vector<FlowId> out;
  for (const Counter& c : heap_) {
    if (compare_threshold(c.estimate, total_, theta) != std::strong_ordering::less) out.push_back(c.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool SpaceSavingHeap::audit() const {
  if (heap_.size() > capacity_ || index_.size() != heap_.size()) return false;
  for (std::size_t i = 0; i < heap_.size(); ++i) {
    if (i > 0 && heap_[(i - 1) / 2].estimate > heap_[i].estimate) return false;
    const auto it = index_.find(heap_[i].id);
    if (it == index_.end() || it->second != i) return false;
  }
  return true;
}

}  // namespace dimsum
