#pragma once

#include <cstdint>
#include <vector>

#include "dimsum/op_counter.hpp"
#include "dimsum/types.hpp"

namespace dimsum {

/// Count-Min sketch with d = ceil(ln 1/delta) rows of w = ceil(e/epsilon) cells.
class CountMinSketch {
 public:
  CountMinSketch(double epsilon, double delta, std::uint64_t seed);

  /// Explicit geometry, mainly for tests.
  static CountMinSketch with_shape(std::size_t depth, std::size_t width, std::uint64_t seed);

  void update(FlowId id, Volume weight);
  Volume query(FlowId id) const;

  std::size_t depth() const { return depth_; }
  std::size_t width() const { return width_; }
  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  Volume total_weight() const { return total_; }
  Volume cell(std::size_t row, std::size_t col) const { return cells_[row * width_ + col]; }
  std::size_t column(std::size_t row, FlowId id) const;

  void attach_counter(OpCounter* counter) { counter_ = counter; }

 private:
  // Multiply-add-shift: high 64 bits of (a*x + b) mod 2^128, then scaled to [0, width).
  struct RowHash {
    unsigned __int128 a;
    unsigned __int128 b;
  };

  CountMinSketch(std::size_t depth, std::size_t width, double epsilon, double delta, std::uint64_t seed);

  std::size_t depth_;
  std::size_t width_;
  double epsilon_;
  double delta_;
  std::vector<RowHash> hashes_;
  std::vector<Volume> cells_;
  Volume total_ = 0;
  OpCounter* counter_ = nullptr;
};

}  // namespace dimsum
