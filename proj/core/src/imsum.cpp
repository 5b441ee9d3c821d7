#include "dimsum/imsum.hpp"

#include <limits>

#include "dimsum/selection.hpp"

namespace dimsum {

ImSum::ImSum(const Params& params) : TwoTableSummary(params) {
  scratch_.reserve(params.table_capacity);
}

void ImSum::update(FlowId id, Volume weight) {
  UpdateScope scope(counter_);
  ++stats_.updates;
  ++generation_updates_;
  const auto from_passive = add_to_active(id, weight);
  if (from_passive && *from_passive > q_pending_) --reserved_;
  if (active().size() + reserved_ == params_.table_capacity) maintain();
}

void ImSum::maintain() {
  FlowTable& a = active_mut();
  FlowTable& p = passive_mut();

  q_ = q_pending_;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (counter_ != nullptr) ++counter_->maintenance_ops;
    if (p.value_at(i) > q_) a.insert_if_absent(p.key_at(i), p.value_at(i));
  }
  reserved_ = 0;
  note_entries();

  auto drain = p.drain();
  while (drain.next()) {
  }

  swap_tables();
  select_next_quantile();
}

void ImSum::select_next_quantile() {
  const FlowTable& p = passive();
  if (p.size() < params_.k) {
    q_pending_ = q_;
  } else {
    scratch_.clear();
    for (std::size_t i = 0; i < p.size(); ++i) scratch_.push_back(p.value_at(i));
    if (counter_ != nullptr) counter_->maintenance_ops += p.size();
    SelectionTask task(std::move(scratch_), params_.k);
    const Volume kth = *task.step(std::numeric_limits<std::uint64_t>::max());
    if (counter_ != nullptr) counter_->selection_ops += task.ops_spent();
    scratch_ = std::move(task).release_values();
    q_pending_ = merge_quantile(kth);
  }
  reserved_ = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (counter_ != nullptr) ++counter_->maintenance_ops;
    if (p.value_at(i) > q_pending_) ++reserved_;
  }
}

}  // namespace dimsum
