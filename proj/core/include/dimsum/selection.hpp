#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dimsum/types.hpp"

namespace dimsum {

/// Planning constant for selection cost: a task over n values is budgeted
/// kSelectionOpFactor * n basic operations.
inline constexpr std::uint64_t kSelectionOpFactor = 24;

/// k-th largest (1 = maximum) counting duplicates, deterministic
/// median-of-medians. Throws RankOutOfRange unless 1 <= k <= values.size().
Volume kth_largest(std::span<const Volume> values, std::size_t k);

/// Resumable k-th largest selection.
///
/// The recursion of median-of-medians is kept on an explicit frame stack so
/// that the computation can stop after any single basic operation and resume
/// later. A basic operation is one three-way element comparison or one element
/// swap/copy; index bookkeeping is free. The task owns its values and permutes
/// them in place.
class SelectionTask {
 public:
  SelectionTask(std::vector<Volume> values, std::size_t k);

  SelectionTask(SelectionTask&&) noexcept = default;
  SelectionTask& operator=(SelectionTask&&) noexcept = default;

  /// Performs at most `budget` basic operations. Returns the result once the
  /// selection has completed; further calls return the same value.
  std::optional<Volume> step(std::uint64_t budget);

  bool done() const { return done_; }
  Volume result() const { return result_; }
  std::uint64_t ops_spent() const { return ops_; }
  std::size_t size() const { return values_.size(); }
  std::size_t rank() const { return k_; }

  /// Number of input values strictly greater than the result. Valid once done.
  std::size_t count_greater() const { return count_greater_; }

  /// Hash of the complete internal state (buffers, frames, counters).
  std::uint64_t digest() const;

  /// Gives the (permuted) value buffer back for reuse.
  std::vector<Volume> release_values() && { return std::move(values_); }

 private:
  enum class Stage : std::uint8_t { Start, SmallSort, GroupMedian, AwaitPivot, Partition, Decide };
  enum class Pending : std::uint8_t { None, SwapLow, SwapHigh, SmallSwap };

  struct Frame {
    bool in_arena = false;
    std::size_t lo = 0;
    std::size_t hi = 0;
    std::size_t rank = 0;  // 0-based, descending order, relative to lo
    std::size_t arena_base = 0;
    Stage stage = Stage::Start;
    Pending pending = Pending::None;
    // insertion sort cursors
    std::size_t i = 0;
    std::size_t j = 0;
    // group median state
    std::size_t group = 0;
    std::uint8_t net_step = 0;
    std::uint8_t group_size = 0;
    std::uint8_t idx[5] = {0, 1, 2, 3, 4};
    // 3-way partition: [lo,lt) > pivot, [lt,cur) == pivot, [gt,hi) < pivot
    Volume pivot = 0;
    std::size_t lt = 0;
    std::size_t cur = 0;
    std::size_t gt = 0;
  };

  Volume* buffer(const Frame& f) { return f.in_arena ? arena_.get() : values_.data(); }
  void settle() { run(false); }
  bool run(bool perform);
  void finish_frame(Volume value, std::size_t greater);

  std::vector<Volume> values_;
  std::unique_ptr<Volume[]> arena_;
  std::size_t arena_size_ = 0;
  std::size_t arena_top_ = 0;
  std::vector<Frame> frames_;
  std::size_t k_;
  std::uint64_t ops_ = 0;
  bool done_ = false;
  Volume result_ = 0;
  std::size_t count_greater_ = 0;
};

}  // namespace dimsum
