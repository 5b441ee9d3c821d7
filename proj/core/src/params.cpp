#include "dimsum/params.hpp"

#include <cmath>
#include <string>

#include "dimsum/exact_math.hpp"

namespace dimsum {

Params Params::make(double epsilon, double gamma) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0)) {
    throw ParameterError("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("gamma must be positive, got " + std::to_string(gamma));
  }
  Params p;
  p.epsilon = epsilon;
  p.gamma = gamma;
  p.k = exact_ceil_ratio(1.0, epsilon);
  p.g_min = exact_ceil_ratio(gamma, epsilon);
  p.table_capacity = p.g_min + p.k - 1;
  if (p.table_capacity < p.g_min || p.table_capacity > (std::uint64_t{1} << 31)) {
    throw ParameterError("table capacity too large for epsilon/gamma");
  }
  return p;
}

Params Params::from_log2(int epsilon_log2, double gamma) {
  if (epsilon_log2 > 0 || epsilon_log2 < -40) {
    throw ParameterError("epsilon exponent must be in [-40, 0]");
  }
  return make(std::ldexp(1.0, epsilon_log2), gamma);
}

}  // namespace dimsum
