#include "dimsum/summary.hpp"

#include <algorithm>

#include "dimsum/exact_math.hpp"

namespace dimsum {

TwoTableSummary::TwoTableSummary(const Params& params)
    : params_(params),
      tables_{FlowTable(params.table_capacity), FlowTable(params.table_capacity)} {}

void TwoTableSummary::attach_counter(OpCounter* counter) {
  counter_ = counter;
  tables_[0].attach_counter(counter);
  tables_[1].attach_counter(counter);
}

Volume TwoTableSummary::query(FlowId id) const {
  if (const auto v = active().get(id)) return *v;
  if (const auto v = passive().get(id)) return *v;
  return q_;
}

std::vector<FlowId> TwoTableSummary::elephants(double theta) const {
  if (!(theta > 0.0) || !(theta <= 1.0)) throw ParameterError("theta must lie in (0, 1]");
  std::vector<FlowId> out;
  const FlowTable& a = active();
  const FlowTable& p = passive();
  a.for_each([&](FlowId id, Volume v) {
    if (compare_threshold(v, total_, theta) != std::strong_ordering::less) out.push_back(id);
  });
  p.for_each([&](FlowId id, Volume v) {
    if (a.contains(id)) return;
    if (compare_threshold(v, total_, theta) != std::strong_ordering::less) out.push_back(id);
  });
  stats_.max_elephant_scan = std::max(stats_.max_elephant_scan, a.size() + p.size());
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Volume> TwoTableSummary::add_to_active(FlowId id, Volume weight) {
  total_ = checked_add(total_, weight, "total weight R");
  FlowTable& a = active_mut();
  if (const auto cur = a.get(id)) {
    a.upsert(id, checked_add(*cur, weight, "flow estimate"));
    return std::nullopt;
  }
  const auto from_passive = passive().get(id);
  const Volume base = from_passive ? *from_passive : q_;
  a.upsert(id, checked_add(base, weight, "flow estimate"));
  note_entries();
  return from_passive;
}

void TwoTableSummary::swap_tables() {
  active_ = 1 - active_;
  ++stats_.generations;
  stats_.min_generation_updates = std::min(stats_.min_generation_updates, generation_updates_);
  generation_updates_ = 0;
}

Volume TwoTableSummary::merge_quantile(Volume kth) {
  if (kth < q_) ++stats_.quantile_regressions;
  return std::max(q_, kth);
}

}  // namespace dimsum
