#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "dimsum/flow_table.hpp"
#include "dimsum/op_counter.hpp"
#include "dimsum/params.hpp"
#include "dimsum/types.hpp"

namespace dimsum {

struct SummaryStats {
  std::uint64_t updates = 0;
  std::uint64_t generations = 0;
  /// Fewest updates observed in a completed generation (max() until one completes).
  std::uint64_t min_generation_updates = std::numeric_limits<std::uint64_t>::max();
  std::size_t peak_entries = 0;
  /// Selections whose k-th largest came out below the published q.
  std::uint64_t quantile_regressions = 0;
  /// DIM-SUM slices that had to exceed ceil(M/U) to finish (should stay 0).
  std::uint64_t schedule_overruns = 0;
  std::size_t max_elephant_scan = 0;
};

/// State shared by IM-SUM and DIM-SUM: the Active/Passive table pair, the
/// published quantile q, the running total R and the read path
/// (Active, then Passive, then q).
class TwoTableSummary {
 public:
  Volume query(FlowId id) const;

  /// Every id in either table whose estimate is >= R * theta, sorted.
  std::vector<FlowId> elephants(double theta) const;

  Volume total_weight() const { return total_; }
  Volume quantile() const { return q_; }
  /// Quantile selected from the current Passive table, published at the next
  /// generation end.
  Volume pending_quantile() const { return q_pending_; }

  const Params& params() const { return params_; }
  const FlowTable& active() const { return tables_[active_]; }
  const FlowTable& passive() const { return tables_[1 - active_]; }
  std::size_t entries() const { return active().size() + passive().size(); }
  std::uint64_t generation() const { return stats_.generations; }
  const SummaryStats& stats() const { return stats_; }

  void attach_counter(OpCounter* counter);

 protected:
  explicit TwoTableSummary(const Params& params);

  FlowTable& active_mut() { return tables_[active_]; }
  FlowTable& passive_mut() { return tables_[1 - active_]; }

  /// Adds `weight` to R and to the flow's estimate, writing it into Active.
  /// Returns the Passive value if the flow was not in Active but in Passive.
  std::optional<Volume> add_to_active(FlowId id, Volume weight);

  void swap_tables();
  void note_entries() {
    const std::size_t n = entries();
    if (n > stats_.peak_entries) stats_.peak_entries = n;
  }
  /// max(q, kth) with bookkeeping for regressions.
  Volume merge_quantile(Volume kth);

  Params params_;
  FlowTable tables_[2];
  int active_ = 0;
  Volume q_ = 0;
  Volume q_pending_ = 0;
  Volume total_ = 0;
  std::uint64_t generation_updates_ = 0;
  mutable SummaryStats stats_;
  OpCounter* counter_ = nullptr;
};

}  // namespace dimsum
