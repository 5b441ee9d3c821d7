#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "dimsum/types.hpp"

namespace dimsum {

/// Unbounded exact per-flow totals. Ground truth for tests and audits.
class ExactOracle {
 public:
  void update(FlowId id, Volume weight);

  /// f_x, 0 for ids never seen.
  Volume frequency(FlowId id) const;
  Volume query(FlowId id) const { return frequency(id); }

  Volume total_weight() const { return total_; }
  std::uint64_t length() const { return length_; }
  std::size_t distinct() const { return counts_.size(); }

  /// { x : f_x > R * theta }, strict.
  std::unordered_set<FlowId> elephants(double theta) const;

  const std::unordered_map<FlowId, Volume>& counts() const { return counts_; }

 private:
  std::unordered_map<FlowId, Volume> counts_;
  Volume total_ = 0;
  std::uint64_t length_ = 0;
};

}  // namespace dimsum
