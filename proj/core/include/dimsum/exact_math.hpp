#pragma once

#include <compare>
#include <cstdint>

#include "dimsum/types.hpp"

namespace dimsum {

/// Exact comparison of `lhs` against `total * factor`, where factor is any
/// finite non-negative double. No rounding happens: the double is decomposed
/// into an integer mantissa and a binary exponent and the product is carried
/// in 128 bits.
std::strong_ordering compare_scaled(Volume lhs, Volume total, double factor);

/// `lhs` against the elephant threshold R * theta, where the threshold is the
/// double product as rounded by the FPU. This makes decimal thetas behave as
/// written (10 * 0.7 == 7) and is exact for dyadic theta and R < 2^53.
inline std::strong_ordering compare_threshold(Volume lhs, Volume total, double theta) {
  return compare_scaled(lhs, 1, static_cast<double>(total) * theta);
}

/// ceil(num / den) computed exactly for positive finite doubles.
/// Throws ParameterError if the result does not fit in 64 bits.
std::uint64_t exact_ceil_ratio(double num, double den);

}  // namespace dimsum
