#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dimsum/selection.hpp"
#include "dimsum/summary.hpp"

namespace dimsum {

/// De-amortized Iterative Median SUMming: O(1) worst-case weighted updates.
///
/// Same observable behaviour as ImSum on every stream. The maintenance of the
/// Passive table is spread over the generation: before every update,
/// ceil(M/U) basic operations run, where M bounds the maintenance work left
/// and U bounds from below the updates left before Active fills. The Passive
/// table is flushed in O(1) at the swap.
class DimSum : public TwoTableSummary {
 public:
  enum class Phase : std::uint8_t { Idle, Snapshot, Selecting, Copying };

  explicit DimSum(const Params& params, std::uint64_t selection_factor = kSelectionOpFactor);

  void update(FlowId id, Volume weight);

  /// Runs at most `budget` maintenance operations; returns how many ran.
  std::uint64_t maintenance_slice(std::uint64_t budget);

  Phase phase() const { return phase_; }

  /// U: lower bound on the updates left before Active fills.
  std::int64_t remaining_updates() const;
  /// M: upper bound on the maintenance operations left in this cycle.
  std::uint64_t remaining_ops() const;
  /// M at the start of a cycle: (C_SEL + 2) * T + (k - 1).
  std::uint64_t cycle_ops() const;

 private:
  void start_cycle();
  void end_generation();
  std::uint64_t survivor_bound() const;
  void finish_selection(Volume kth, std::size_t greater);

  std::uint64_t selection_factor_;
  Phase phase_ = Phase::Idle;
  std::vector<Volume> snapshot_;
  std::optional<SelectionTask> task_;
  std::size_t cycle_size_ = 0;  // |Passive| when the cycle started
  std::size_t snap_cursor_ = 0;
  std::size_t copy_cursor_ = 0;
  bool insert_pending_ = false;
  bool selected_ = false;
  std::uint64_t survivors_total_ = 0;  // exact count or k-1 bound
  std::uint64_t survivors_seen_ = 0;
};

}  // namespace dimsum
