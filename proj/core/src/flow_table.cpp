#include "dimsum/flow_table.hpp"

#include <bit>
#include <string>

namespace dimsum {

FlowTable::FlowTable(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ParameterError("FlowTable capacity must be positive");
  const std::size_t slot_count = std::bit_ceil(std::max<std::size_t>(8, capacity * 2));
  mask_ = slot_count - 1;
  slots_.resize(slot_count);
  keys_.reserve(capacity);
  values_.reserve(capacity);
  slot_of_.reserve(capacity);
}

void FlowTable::place(FlowId key, Volume value, std::size_t slot) {
  Slot& s = slots_[slot];
  if (s.stamp == tomb_stamp()) --tombstones_;
  s.key = key;
  s.stamp = live_stamp();
  s.dense = static_cast<std::uint32_t>(keys_.size());
  keys_.push_back(key);
  values_.push_back(value);
  slot_of_.push_back(static_cast<std::uint32_t>(slot));
}

void FlowTable::upsert(FlowId key, Volume value) {
  count_op();
  const std::uint64_t live = live_stamp();
  const std::uint64_t tomb = tomb_stamp();
  std::size_t reusable = kNotFound;
  std::size_t i = mix(key) & mask_;
  while (true) {
    Slot& s = slots_[i];
    if (s.stamp == live) {
      if (s.key == key) {
        values_[s.dense] = value;
        return;
      }
    } else if (s.stamp == tomb) {
      if (reusable == kNotFound) reusable = i;
    } else {
      break;
    }
    i = (i + 1) & mask_;
  }
  if (keys_.size() >= capacity_) {
    throw CapacityExceeded("FlowTable full (capacity " + std::to_string(capacity_) + ")");
  }
  place(key, value, reusable != kNotFound ? reusable : i);
}

bool FlowTable::insert_if_absent(FlowId key, Volume value) {
  count_op();
  const std::uint64_t live = live_stamp();
  const std::uint64_t tomb = tomb_stamp();
  std::size_t reusable = kNotFound;
  std::size_t i = mix(key) & mask_;
  while (true) {
    const Slot& s = slots_[i];
    if (s.stamp == live) {
      if (s.key == key) return false;
    } else if (s.stamp == tomb) {
      if (reusable == kNotFound) reusable = i;
    } else {
      break;
    }
    i = (i + 1) & mask_;
  }
  if (keys_.size() >= capacity_) {
    throw CapacityExceeded("FlowTable full (capacity " + std::to_string(capacity_) + ")");
  }
  place(key, value, reusable != kNotFound ? reusable : i);
  return true;
}

void FlowTable::clear() {
  ++epoch_;
  tombstones_ = 0;
  keys_.clear();
  values_.clear();
  slot_of_.clear();
}

void FlowTable::rebuild() {
  // Drop tombstones by re-placing the live entries under a fresh epoch.
  std::vector<FlowId> keys;
  std::vector<Volume> values;
  keys.swap(keys_);
  values.swap(values_);
  clear();
  keys_.reserve(capacity_);
  values_.reserve(capacity_);
  for (std::size_t j = 0; j < keys.size(); ++j) {
    std::size_t i = mix(keys[j]) & mask_;
    while (slots_[i].stamp == live_stamp()) i = (i + 1) & mask_;
    place(keys[j], values[j], i);
  }
}

std::optional<std::pair<FlowId, Volume>> FlowTable::Drain::next() {
  FlowTable& t = *table_;
  if (t.keys_.empty()) {
    if (t.tombstones_ != 0) t.clear();
    return std::nullopt;
  }
  t.count_op();
  const std::pair<FlowId, Volume> out{t.keys_.back(), t.values_.back()};
  t.slots_[t.slot_of_.back()].stamp = t.tomb_stamp();
  ++t.tombstones_;
  t.keys_.pop_back();
  t.values_.pop_back();
  t.slot_of_.pop_back();
  if (t.keys_.empty()) {
    t.clear();
  } else if (t.tombstones_ > t.capacity_ / 2) {
    t.rebuild();
  }
  return out;
}

}  // namespace dimsum
