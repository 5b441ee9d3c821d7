#include "dimsum/exact_math.hpp"

#include <cmath>

namespace dimsum {

namespace {

using u128 = unsigned __int128;

struct Dyadic {
  std::uint64_t mantissa;  // < 2^53
  int exponent;            // value = mantissa * 2^exponent
};

Dyadic decompose(double x) {
  int exp = 0;
  const double frac = std::frexp(x, &exp);  // x = frac * 2^exp, frac in [0.5, 1)
  const auto mant = static_cast<std::uint64_t>(std::ldexp(frac, 53));
  return {mant, exp - 53};
}

}  // namespace

std::strong_ordering compare_scaled(Volume lhs, Volume total, double factor) {
  if (!(factor >= 0.0) || !std::isfinite(factor)) {
    throw ParameterError("compare_scaled: factor must be finite and non-negative");
  }
  if (factor == 0.0 || total == 0) {
    return lhs <=> Volume{0};
  }
  const Dyadic d = decompose(factor);
  const u128 product = static_cast<u128>(total) * d.mantissa;  // < 2^117
  if (d.exponent >= 0) {
    if (d.exponent >= 64) return std::strong_ordering::less;  // rhs >= 2^64 > lhs
    const u128 rhs = product << d.exponent;
    if (d.exponent > 10 && (rhs >> d.exponent) != product) return std::strong_ordering::less;
    return static_cast<u128>(lhs) <=> rhs;
  }
  const int shift = -d.exponent;
  if (shift >= 128) {
    // 0 < rhs < 1
    return lhs == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const u128 whole = product >> shift;
  const u128 rem = product & ((static_cast<u128>(1) << shift) - 1);
  const u128 l = lhs;
  if (l < whole) return std::strong_ordering::less;
  if (l > whole) return std::strong_ordering::greater;
  return rem == 0 ? std::strong_ordering::equal : std::strong_ordering::less;
}

std::uint64_t exact_ceil_ratio(double num, double den) {
  if (!(num > 0.0) || !(den > 0.0) || !std::isfinite(num) || !std::isfinite(den)) {
    throw ParameterError("exact_ceil_ratio: operands must be positive and finite");
  }
  const Dyadic n = decompose(num);
  const Dyadic d = decompose(den);
  const int shift = n.exponent - d.exponent;
  u128 numerator = n.mantissa;
  u128 denominator = d.mantissa;
  if (shift >= 0) {
    if (shift > 74) throw ParameterError("ratio too large");
    numerator <<= shift;
  } else {
    if (-shift > 74) return 1;  // num/den < 2^-21, ceil is 1
    denominator <<= -shift;
  }
  const u128 q = numerator / denominator + (numerator % denominator != 0 ? 1 : 0);
  if (q > UINT64_MAX) throw ParameterError("ratio too large");
  return static_cast<std::uint64_t>(q);
}

}  // namespace dimsum
