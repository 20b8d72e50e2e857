#pragma once

#include <cmath>
#include <complex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "jpr/error.hpp"
#include "jpr/policy.hpp"

namespace jpr {

struct IndexRange {
  long lo = 0;
  long hi = -1;
  long count() const { return hi >= lo ? hi - lo + 1 : 0; }
};

// Smallest symmetric window around `center` such that
//   sum_{|n - center| > N} exp(log_scale - alpha (n - center)^2) (1 + |n|) < abs_tol,
// found by doubling N. Throws TruncationError past max_terms.
IndexRange gaussian_range(double alpha, double center, double log_scale,
                          const TruncationPolicy &pol);

// covering union of two ranges
IndexRange hull(const IndexRange &a, const IndexRange &b);

// exp(x^2) erfc(x)
double erfcx(double x);

// erfc(t) exp(A) without intermediate overflow
double erfc_times_exp(double t, double A);

namespace detail {

// bisect until the K31 estimate is below the local absolute tolerance or a
// small multiple of the local L1 norm; boost's own criterion is relative to
// the integral, which never triggers on cancelling panels
template <class F>
auto gk_adapt(F &f, double lo, double hi, int depth, double tol, double &err, double &l1) {
  using boost::math::quadrature::gauss_kronrod;
  double e = 0, n = 0;
  auto r = gauss_kronrod<double, 31>::integrate(f, lo, hi, 0, 0.0, &e, &n);
  if (depth == 0 || !(e > std::max(tol, 1e-13 * n))) {
    err += e;
    l1 += n;
    return r;
  }
  const double mid = 0.5 * (lo + hi);
  auto left = gk_adapt(f, lo, mid, depth - 1, tol / 2, err, l1);
  return left + gk_adapt(f, mid, hi, depth - 1, tol / 2, err, l1);
}

} // namespace detail

// Adaptive Gauss-Kronrod on [a, b], split into panels no wider than
// `panel`. The |K31 - G15| estimate is far above the actual K31 error on
// smooth integrands, so the gate is max(abs_tol, 1e-10 * L1 norm).
template <class F>
auto integrate(F &&f, double a, double b, double abs_tol, double panel = 1.0,
               double *err_out = nullptr) {
  using R = decltype(f(a));
  R total{};
  double err_total = 0, l1_total = 0;
  const long n = std::max(1L, static_cast<long>(std::ceil((b - a) / panel)));
  const double h = (b - a) / double(n);
  for (long i = 0; i < n; ++i) {
    const double lo = a + h * double(i);
    const double hi = i + 1 == n ? b : lo + h;
    total += detail::gk_adapt(f, lo, hi, 15, abs_tol / double(n), err_total, l1_total);
  }
  if (!(err_total <= std::max(abs_tol, 1e-10 * l1_total)))
    throw QuadratureError("quadrature error estimate " + std::to_string(err_total) +
                          " above tolerance");
  if (err_out)
    *err_out = err_total;
  return total;
}

} // namespace jpr
