#include "jpr/series.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace jpr {

IndexRange gaussian_range(double alpha, double center, double log_scale,
                          const TruncationPolicy &pol) {
  if (!(alpha > 0) || !std::isfinite(center) || !std::isfinite(log_scale))
    throw TruncationError("series does not decay");
  const double c = std::abs(center);
  const double target = std::log(pol.abs_tol / 4);
  // log of the two-sided tail over distances >= N
  auto log_tail = [&](double N) {
    const double r = std::exp(-alpha * (2 * N + 1)) * (1 + 1 / (2 + c + N));
    if (r >= 1)
      return std::numeric_limits<double>::infinity();
    return log_scale - alpha * N * N + std::log(2 * (2 + c + N) / (1 - r));
  };
  long N = 4;
  while (log_tail(double(N)) >= target) {
    if (2 * N + 1 > pol.max_terms)
      throw TruncationError("series needs more than max_terms terms");
    N *= 2;
  }
  long lo = N / 2, hi = N;
  while (hi - lo > 1) {
    const long mid = (lo + hi) / 2;
    (log_tail(double(mid)) < target ? hi : lo) = mid;
  }
  return {static_cast<long>(std::floor(center - double(hi))),
          static_cast<long>(std::ceil(center + double(hi)))};
}

IndexRange hull(const IndexRange &a, const IndexRange &b) {
  if (a.count() == 0)
    return b;
  if (b.count() == 0)
    return a;
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

double erfcx(double x) {
  if (x < 0)
    return 2 * std::exp(x * x) - erfcx(-x);
  if (x < 2)
    return std::exp(x * x) * std::erfc(x);
  // continued fraction, good to full precision for x >= 2
  double f = x;
  for (int n = 80; n >= 1; --n)
    f = x + 0.5 * n / f;
  return 1 / (f * std::sqrt(std::numbers::pi));
}

double erfc_times_exp(double t, double A) {
  if (t >= 0)
    return erfcx(t) * std::exp(A - t * t);
  return (2 - std::erfc(-t)) * std::exp(A);
}

} // namespace jpr
