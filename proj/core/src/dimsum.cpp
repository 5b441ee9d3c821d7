#include "dimsum/dimsum.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace dimsum {

DimSum::DimSum(const Params& params, std::uint64_t selection_factor)
    : TwoTableSummary(params), selection_factor_(selection_factor) {
  if (selection_factor == 0) throw ParameterError("selection factor must be positive");
  snapshot_.reserve(params.table_capacity);
}

std::uint64_t DimSum::cycle_ops() const {
  const std::uint64_t n = params_.table_capacity;
  return (selection_factor_ + 2) * n + (params_.k - 1);
}

std::uint64_t DimSum::survivor_bound() const {
  const std::uint64_t total = selected_ ? survivors_total_ : params_.k - 1;
  return total > survivors_seen_ ? total - survivors_seen_ : 0;
}

std::int64_t DimSum::remaining_updates() const {
  const auto cap = static_cast<std::int64_t>(params_.table_capacity);
  const auto used = static_cast<std::int64_t>(active().size());
  const auto pending = phase_ == Phase::Idle ? 0 : static_cast<std::int64_t>(survivor_bound());
  return cap - used - pending;
}

std::uint64_t DimSum::remaining_ops() const {
  const std::uint64_t n = cycle_size_;
  const std::uint64_t select_budget = selection_factor_ * n;
  switch (phase_) {
    case Phase::Idle:
      return 0;
    case Phase::Snapshot:
      return (n - snap_cursor_) + select_budget + n + survivor_bound();
    case Phase::Selecting: {
      const std::uint64_t spent = task_->ops_spent();
      return (select_budget > spent ? select_budget - spent : 0) + n + survivor_bound();
    }
    case Phase::Copying:
      return (n - copy_cursor_) + survivor_bound();
  }
  return 0;
}

void DimSum::update(FlowId id, Volume weight) {
  UpdateScope scope(counter_);
  ++stats_.updates;
  ++generation_updates_;

  if (phase_ != Phase::Idle) {
    const std::int64_t u = remaining_updates();
    if (u < 1) {
      throw ScheduleViolation("no update slack left with maintenance pending (U=" +
                              std::to_string(u) + ")");
    }
    const std::uint64_t m = remaining_ops();
    const std::uint64_t slice = (m + static_cast<std::uint64_t>(u) - 1) / static_cast<std::uint64_t>(u);
    if (u == 1) {
      const std::uint64_t ran = maintenance_slice(std::numeric_limits<std::uint64_t>::max());
      if (ran > slice) ++stats_.schedule_overruns;
    } else {
      maintenance_slice(slice);
    }
  }

  add_to_active(id, weight);

  if (active().full()) {
    if (phase_ != Phase::Idle) {
      throw ScheduleViolation("Active table filled before maintenance completed");
    }
    end_generation();
  }
}

void DimSum::end_generation() {
  q_ = q_pending_;
  passive_mut().clear();
  swap_tables();
  start_cycle();
}

void DimSum::start_cycle() {
  cycle_size_ = passive().size();
  snap_cursor_ = 0;
  copy_cursor_ = 0;
  insert_pending_ = false;
  selected_ = false;
  survivors_total_ = 0;
  survivors_seen_ = 0;
  snapshot_.clear();
  if (cycle_size_ == 0) {
    q_pending_ = q_;
    phase_ = Phase::Idle;
  } else if (cycle_size_ < params_.k) {
    q_pending_ = q_;
    selected_ = true;
    survivors_total_ = params_.k - 1;
    phase_ = Phase::Copying;
  } else {
    phase_ = Phase::Snapshot;
  }
}

void DimSum::finish_selection(Volume kth, std::size_t greater) {
  q_pending_ = merge_quantile(kth);
  selected_ = true;
  // Entries strictly above the k-th largest are known exactly; if q stays
  // above kth only the k-1 bound is available.
  survivors_total_ = q_pending_ == kth ? greater : params_.k - 1;
  snapshot_ = std::move(*task_).release_values();
  snapshot_.clear();
  task_.reset();
  phase_ = Phase::Copying;
}

std::uint64_t DimSum::maintenance_slice(std::uint64_t budget) {
  std::uint64_t ran = 0;
  const FlowTable& p = passive();
  while (ran < budget && phase_ != Phase::Idle) {
    const std::uint64_t left = budget - ran;
    switch (phase_) {
      case Phase::Snapshot: {
        const std::size_t step =
            static_cast<std::size_t>(std::min<std::uint64_t>(left, cycle_size_ - snap_cursor_));
        for (std::size_t i = 0; i < step; ++i) snapshot_.push_back(p.value_at(snap_cursor_ + i));
        snap_cursor_ += step;
        ran += step;
        if (counter_ != nullptr) counter_->maintenance_ops += step;
        if (snap_cursor_ == cycle_size_) {
          task_.emplace(std::move(snapshot_), params_.k);
          phase_ = Phase::Selecting;
        }
        break;
      }
      case Phase::Selecting: {
        const std::uint64_t before = task_->ops_spent();
        task_->step(left);
        const std::uint64_t spent = task_->ops_spent() - before;
        ran += spent;
        if (counter_ != nullptr) counter_->selection_ops += spent;
        if (task_->done()) finish_selection(task_->result(), task_->count_greater());
        break;
      }
      case Phase::Copying: {
        if (insert_pending_) {
          active_mut().insert_if_absent(p.key_at(copy_cursor_), p.value_at(copy_cursor_));
          note_entries();
          insert_pending_ = false;
          ++survivors_seen_;
          ++copy_cursor_;
          ++ran;
        } else if (copy_cursor_ < cycle_size_) {
          ++ran;
          if (counter_ != nullptr) ++counter_->maintenance_ops;
          if (p.value_at(copy_cursor_) > q_pending_) {
            insert_pending_ = true;
          } else {
            ++copy_cursor_;
          }
        }
        if (!insert_pending_ && copy_cursor_ == cycle_size_) phase_ = Phase::Idle;
        break;
      }
      case Phase::Idle:
        break;
    }
  }
  return ran;
}

}  // namespace dimsum
