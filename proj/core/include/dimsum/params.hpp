#pragma once

#include <cstdint>

#include "dimsum/types.hpp"

namespace dimsum {

/// Accuracy / speed-space parameters and the table sizes derived from them.
///
/// With k = ceil(1/eps) and g_min = ceil(gamma/eps), each of the two tables
/// holds table_capacity = g_min + k - 1 entries, and every generation spans at
/// least g_min updates. All ceilings are computed exactly from the binary
/// representation of the doubles.
struct Params {
  double epsilon = 0.0;
  double gamma = 0.0;
  std::uint64_t k = 0;
  std::uint64_t table_capacity = 0;
  std::uint64_t g_min = 0;

  /// Throws ParameterError unless 0 < epsilon <= 1 and gamma > 0.
  static Params make(double epsilon, double gamma);

  /// eps = 2^exponent, exponent <= 0.
  static Params from_log2(int epsilon_log2, double gamma);
};

}  // namespace dimsum
