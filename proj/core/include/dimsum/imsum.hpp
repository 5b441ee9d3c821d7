#pragma once

#include "dimsum/summary.hpp"

namespace dimsum {

/// Iterative Median SUMming: O(1) amortized weighted updates.
///
/// Maintenance runs serially when a generation ends. A generation ends when
/// the Active table plus the slots reserved for Passive survivors (entries
/// above the pending quantile that must be copied back) reaches capacity T.
/// At that point the pending quantile is published as q, survivors absent
/// from Active are copied, Passive is cleared, the tables swap roles, and the
/// k-th largest value of the new Passive table becomes the next pending
/// quantile.
class ImSum : public TwoTableSummary {
 public:
  explicit ImSum(const Params& params);

  void update(FlowId id, Volume weight);

  /// Passive survivors not yet present in Active.
  std::uint64_t reserved_slots() const { return reserved_; }

 private:
  void maintain();
  void select_next_quantile();

  std::uint64_t reserved_ = 0;
  std::vector<Volume> scratch_;
};

}  // namespace dimsum
