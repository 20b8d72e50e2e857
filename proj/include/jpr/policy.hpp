#pragma once

namespace jpr {

struct TruncationPolicy {
  double abs_tol = 1e-13;
  long max_terms = 4096;
  double max_interval = 200.0;
};

void validate(const TruncationPolicy &pol);

// evaluation inside this distance of a pole raises PoleProximityError
inline constexpr double pole_eps = 1e-8;

} // namespace jpr
