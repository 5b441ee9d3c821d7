#include "dimsum/selection.hpp"

#include <limits>
#include <string>
#include <utility>

namespace dimsum {

namespace {

struct Network {
  std::uint8_t length;
  std::uint8_t median;
  std::uint8_t pairs[7][2];
};

// Compare-exchange networks leaving a median of the group at idx[median].
constexpr Network kNetworks[6] = {
    {0, 0, {}},
    {0, 0, {}},
    {1, 0, {{0, 1}}},
    {3, 1, {{0, 1}, {1, 2}, {0, 1}}},
    {5, 1, {{0, 1}, {2, 3}, {0, 2}, {1, 3}, {1, 2}}},
    {7, 2, {{0, 1}, {3, 4}, {0, 3}, {1, 4}, {1, 2}, {2, 3}, {1, 2}}},
};

constexpr std::size_t kSmall = 5;

std::uint64_t fold(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0x100000001b3ULL;
}

}  // namespace

Volume kth_largest(std::span<const Volume> values, std::size_t k) {
  SelectionTask task(std::vector<Volume>(values.begin(), values.end()), k);
  return *task.step(std::numeric_limits<std::uint64_t>::max());
}

SelectionTask::SelectionTask(std::vector<Volume> values, std::size_t k)
    : values_(std::move(values)), k_(k) {
  if (k == 0 || k > values_.size()) {
    throw RankOutOfRange("rank " + std::to_string(k) + " outside [1, " +
                         std::to_string(values_.size()) + "]");
  }
  arena_size_ = values_.size() / 4 + 64;
  arena_.reset(new Volume[arena_size_]);
  frames_.reserve(32);
  Frame root;
  root.lo = 0;
  root.hi = values_.size();
  root.rank = k - 1;
  frames_.push_back(root);
  settle();
}

std::optional<Volume> SelectionTask::step(std::uint64_t budget) {
  settle();
  while (budget > 0 && !done_) {
    run(true);
    ++ops_;
    --budget;
    settle();
  }
  if (done_) return result_;
  return std::nullopt;
}

void SelectionTask::finish_frame(Volume value, std::size_t greater) {
  frames_.pop_back();
  if (frames_.empty()) {
    done_ = true;
    result_ = value;
    count_greater_ = greater;
    return;
  }
  Frame& parent = frames_.back();
  arena_top_ = parent.arena_base;
  parent.pivot = value;
  parent.stage = Stage::Partition;
  parent.lt = parent.lo;
  parent.cur = parent.lo;
  parent.gt = parent.hi;
  parent.pending = Pending::None;
}

// Advances the state machine. Free transitions are taken unconditionally; at
// the first point that needs a basic operation it either returns false
// (perform == false) or executes exactly that one operation and returns true.
bool SelectionTask::run(bool perform) {
  while (!done_) {
    Frame& f = frames_.back();
    Volume* a = buffer(f);
    switch (f.stage) {
      case Stage::Start: {
        const std::size_t n = f.hi - f.lo;
        if (n <= kSmall) {
          f.stage = Stage::SmallSort;
          f.i = f.lo + 1;
          f.j = f.i;
          f.pending = Pending::None;
        } else {
          f.stage = Stage::GroupMedian;
          f.group = 0;
          f.net_step = 0;
          f.group_size = static_cast<std::uint8_t>(std::min<std::size_t>(kSmall, n));
          for (std::uint8_t g = 0; g < 5; ++g) f.idx[g] = g;
          arena_top_ = f.arena_base;
        }
        continue;
      }

      case Stage::SmallSort: {
        if (f.pending == Pending::SmallSwap) {
          if (!perform) return false;
          std::swap(a[f.j - 1], a[f.j]);
          --f.j;
          f.pending = Pending::None;
          return true;
        }
        if (f.i >= f.hi) {
          const std::size_t pos = f.lo + f.rank;
          const Volume value = a[pos];
          std::size_t first = pos;
          while (first > f.lo && a[first - 1] == value) --first;
          finish_frame(value, first);
          continue;
        }
        if (f.j == f.lo) {
          ++f.i;
          f.j = f.i;
          continue;
        }
        if (!perform) return false;
        if (a[f.j - 1] < a[f.j]) {
          f.pending = Pending::SmallSwap;
        } else {
          ++f.i;
          f.j = f.i;
        }
        return true;
      }

      case Stage::GroupMedian: {
        const Network& net = kNetworks[f.group_size];
        const std::size_t start = f.lo + f.group * kSmall;
        if (f.net_step < net.length) {
          if (!perform) return false;
          const auto [p, q] = net.pairs[f.net_step];
          if (a[start + f.idx[p]] > a[start + f.idx[q]]) std::swap(f.idx[p], f.idx[q]);
          ++f.net_step;
          return true;
        }
        if (f.net_step == net.length) {
          if (!perform) return false;
          arena_[arena_top_++] = a[start + f.idx[net.median]];
          ++f.net_step;
          return true;
        }
        // group complete
        ++f.group;
        const std::size_t next = f.lo + f.group * kSmall;
        if (next < f.hi) {
          f.net_step = 0;
          f.group_size = static_cast<std::uint8_t>(std::min<std::size_t>(kSmall, f.hi - next));
          for (std::uint8_t g = 0; g < 5; ++g) f.idx[g] = g;
          continue;
        }
        const std::size_t m = arena_top_ - f.arena_base;
        Frame child;
        child.in_arena = true;
        child.lo = f.arena_base;
        child.hi = f.arena_base + m;
        child.rank = (m - 1) / 2;
        child.arena_base = arena_top_;
        f.stage = Stage::AwaitPivot;
        frames_.push_back(child);
        continue;
      }

      case Stage::AwaitPivot:
        // unreachable: the child frame on top resumes the parent via finish_frame
        return false;

      case Stage::Partition: {
        if (f.pending == Pending::SwapLow) {
          if (!perform) return false;
          std::swap(a[f.lt], a[f.cur]);
          ++f.lt;
          ++f.cur;
          f.pending = Pending::None;
          return true;
        }
        if (f.pending == Pending::SwapHigh) {
          if (!perform) return false;
          std::swap(a[f.cur], a[f.gt]);
          f.pending = Pending::None;
          return true;
        }
        if (f.cur >= f.gt) {
          f.stage = Stage::Decide;
          continue;
        }
        if (!perform) return false;
        const Volume v = a[f.cur];
        if (v > f.pivot) {
          if (f.lt != f.cur) {
            f.pending = Pending::SwapLow;
          } else {
            ++f.lt;
            ++f.cur;
          }
        } else if (v < f.pivot) {
          --f.gt;
          if (f.cur != f.gt) f.pending = Pending::SwapHigh;
        } else {
          ++f.cur;
        }
        return true;
      }

      case Stage::Decide: {
        const std::size_t greater = f.lt - f.lo;
        const std::size_t equal = f.gt - f.lt;
        if (f.rank < greater) {
          f.hi = f.lt;
        } else if (f.rank < greater + equal) {
          finish_frame(f.pivot, f.lt);
          continue;
        } else {
          f.rank -= greater + equal;
          f.lo = f.gt;
        }
        f.stage = Stage::Start;
        continue;
      }
    }
  }
  return false;
}

std::uint64_t SelectionTask::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Volume v : values_) h = fold(h, v);
  for (std::size_t i = 0; i < arena_top_; ++i) h = fold(h, arena_[i]);
  for (const Frame& f : frames_) {
    h = fold(h, f.in_arena);
    h = fold(h, f.lo);
    h = fold(h, f.hi);
    h = fold(h, f.rank);
    h = fold(h, f.arena_base);
    h = fold(h, static_cast<std::uint64_t>(f.stage));
    h = fold(h, static_cast<std::uint64_t>(f.pending));
    h = fold(h, f.i);
    h = fold(h, f.j);
    h = fold(h, f.group);
    h = fold(h, f.net_step);
    for (const auto x : f.idx) h = fold(h, x);
    h = fold(h, f.pivot);
    h = fold(h, f.lt);
    h = fold(h, f.cur);
    h = fold(h, f.gt);
  }
  h = fold(h, arena_top_);
  h = fold(h, ops_);
  h = fold(h, done_);
  h = fold(h, result_);
  return h;
}

}  // namespace dimsum
