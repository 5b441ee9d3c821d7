#pragma once

#include <algorithm>
#include <cstdint>

namespace dimsum {

/// Basic-operation counters. Algorithms only touch them when one is attached,
/// so throughput runs simply leave it detached.
struct OpCounter {
  std::uint64_t table_ops = 0;        // get / insert / remove on a FlowTable or index map
  std::uint64_t selection_ops = 0;    // comparisons and moves inside k-th largest selection
  std::uint64_t maintenance_ops = 0;  // snapshot copies and survivor-scan comparisons
  std::uint64_t heap_ops = 0;         // comparisons and swaps in a binary heap
  std::uint64_t per_update_max = 0;
  std::uint64_t per_update_sum = 0;
  std::uint64_t updates = 0;

  std::uint64_t total() const {
    return table_ops + selection_ops + maintenance_ops + heap_ops;
  }

  void reset() { *this = OpCounter{}; }

  double mean_per_update() const {
    return updates == 0 ? 0.0 : static_cast<double>(per_update_sum) / static_cast<double>(updates);
  }
};

/// Records the ops spent by one update call into per_update_{max,sum}.
class UpdateScope {
 public:
  explicit UpdateScope(OpCounter* counter)
      : counter_(counter), start_(counter ? counter->total() : 0) {}
  ~UpdateScope() {
    if (counter_ == nullptr) return;
    const std::uint64_t spent = counter_->total() - start_;
    counter_->per_update_max = std::max(counter_->per_update_max, spent);
    counter_->per_update_sum += spent;
    ++counter_->updates;
  }
  UpdateScope(const UpdateScope&) = delete;
  UpdateScope& operator=(const UpdateScope&) = delete;

 private:
  OpCounter* counter_;
  std::uint64_t start_;
};

}  // namespace dimsum
