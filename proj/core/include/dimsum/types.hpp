#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dimsum {

/// Opaque 64-bit flow identifier. Wider keys (5-tuples) are hashed by the caller.
using FlowId = std::uint64_t;

/// Weighted frequency, i.e. bytes or packets attributed to a flow.
using Volume = std::uint64_t;

/// Invalid epsilon / gamma / delta / theta and friends.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inserting a new key into a full FlowTable. Inside IM-SUM/DIM-SUM this is a bug.
class CapacityExceeded : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class RankOutOfRange : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A running total or counter passed 2^64 - 1.
class VolumeOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// DIM-SUM reached a full Active table with maintenance still pending.
class ScheduleViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Volume checked_add(Volume a, Volume b, const char* what) {
  Volume out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw VolumeOverflow(std::string(what) + " exceeds 2^64-1");
  }
  return out;
}

}  // namespace dimsum
