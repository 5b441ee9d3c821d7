#include "dimsum/exact_oracle.hpp"

#include "dimsum/exact_math.hpp"

namespace dimsum {

void ExactOracle::update(FlowId id, Volume weight) {
  const Volume total = checked_add(total_, weight, "oracle total weight");
  Volume& slot = counts_[id];
  slot += weight;  // slot <= total, cannot overflow
  total_ = total;
  ++length_;
}

Volume ExactOracle::frequency(FlowId id) const {
  const auto it = counts_.find(id);
  return it == counts_.end() ? 0 : it->second;
}

std::unordered_set<FlowId> ExactOracle::elephants(double theta) const {
  if (!(theta > 0.0) || !(theta <= 1.0)) throw ParameterError("theta must lie in (0, 1]");
  std::unordered_set<FlowId> out;
  for (const auto& [id, f] : counts_) {
    if (compare_threshold(f, total_, theta) == std::strong_ordering::greater) out.insert(id);
  }
  return out;
}

}  // namespace dimsum
