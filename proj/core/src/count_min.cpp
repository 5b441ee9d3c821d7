#include "dimsum/count_min.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>


namespace dimsum {

namespace {

std::size_t depth_for(double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
  const double d = std::ceil(std::log(1.0 / delta));
  return std::max<std::size_t>(1, static_cast<std::size_t>(d));
}

std::size_t width_for(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0)) throw ParameterError("epsilon must lie in (0, 1]");
  const double w = std::ceil(std::numbers::e / epsilon);
  if (w > static_cast<double>(std::uint64_t{1} << 40)) throw ParameterError("epsilon too small for a Count-Min sketch");
  return static_cast<std::size_t>(w);
}

}  // namespace

CountMinSketch::CountMinSketch(double epsilon, double delta, std::uint64_t seed)
    : CountMinSketch(depth_for(delta), width_for(epsilon), epsilon, delta, seed) {}

CountMinSketch CountMinSketch::with_shape(std::size_t depth, std::size_t width, std::uint64_t seed) {
  if (depth == 0 || width == 0) throw ParameterError("sketch shape must be positive");
  return CountMinSketch(depth, width, std::numbers::e / static_cast<double>(width),
                        std::exp(-static_cast<double>(depth)), seed);
}

CountMinSketch::CountMinSketch(std::size_t depth, std::size_t width, double epsilon, double delta,
                               std::uint64_t seed)
    : depth_(depth), width_(width), epsilon_(epsilon), delta_(delta), cells_(depth * width, 0) {
  std::mt19937_64 rng(seed);
  hashes_.reserve(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    RowHash h{};
    h.a = (static_cast<unsigned __int128>(rng()) << 64) | rng();
    h.b = (static_cast<unsigned __int128>(rng()) << 64) | rng();
    hashes_.push_back(h);
  }
}

std::size_t CountMinSketch::column(std::size_t row, FlowId id) const {
  const RowHash& h = hashes_[row];
  const auto top = static_cast<std::uint64_t>((h.a * id + h.b) >> 64);
  return static_cast<std::size_t>((static_cast<unsigned __int128>(top) * width_) >> 64);
}

void CountMinSketch::update(FlowId id, Volume weight) {
  UpdateScope scope(counter_);
  total_ = checked_add(total_, weight, "total weight R");
  for (std::size_t r = 0; r < depth_; ++r) {
    Volume& c = cells_[r * width_ + column(r, id)];
    c = checked_add(c, weight, "sketch cell");
  }
  if (counter_ != nullptr) counter_->table_ops += depth_;
}

Volume CountMinSketch::query(FlowId id) const {
  Volume best = std::numeric_limits<Volume>::max();
  for (std::size_t r = 0; r < depth_; ++r) best = std::min(best, cells_[r * width_ + column(r, id)]);
  if (counter_ != nullptr) counter_->table_ops += depth_;
  return depth_ == 0 ? 0 : best;
}

}  // namespace dimsum
