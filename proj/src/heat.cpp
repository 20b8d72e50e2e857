#include "jpr/heat.hpp"

#include <cmath>
#include <numbers>

#include "jpr/error.hpp"
#include "jpr/special.hpp"

namespace jpr {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

// displacement along tau (coord -1) or z_coord
JacobiPoint shifted(const JacobiPoint &p, int coord, cplx d) {
  JacobiPoint q = p;
  if (coord < 0)
    q.tau += d;
  else
    q.z(coord) += d;
  return q;
}

JacobiPoint shifted2(const JacobiPoint &p, int c1, cplx d1, int c2, cplx d2) {
  return shifted(shifted(p, c1, d1), c2, d2);
}

void check_coord(const JacobiPoint &p, int c) {
  if (c < -1 || c >= p.dim())
    throw DimensionError("derivative coordinate out of range");
}

// ---- central differences, Wirtinger form so non-holomorphic f is fine

// d/dX (conj = false) or d/dXbar at step h
cplx central_first(const EvalFunction &f, const JacobiPoint &p, int c, bool conj, double h) {
  const cplx fx = (f(shifted(p, c, h)) - f(shifted(p, c, -h))) / (2 * h);
  const cplx fy = (f(shifted(p, c, kI * h)) - f(shifted(p, c, -kI * h))) / (2 * h);
  return 0.5 * (conj ? fx + kI * fy : fx - kI * fy);
}

// second partial along real directions e1 (coord c1) and e2 (coord c2), e in {1, i}
cplx central_partial2(const EvalFunction &f, const JacobiPoint &p, int c1, cplx e1, int c2, cplx e2,
                      double h) {
  if (c1 == c2 && e1 == e2)
    return (f(shifted(p, c1, e1 * h)) - 2.0 * f(p) + f(shifted(p, c1, -e1 * h))) / (h * h);
  return (f(shifted2(p, c1, e1 * h, c2, e2 * h)) - f(shifted2(p, c1, e1 * h, c2, -e2 * h)) -
          f(shifted2(p, c1, -e1 * h, c2, e2 * h)) + f(shifted2(p, c1, -e1 * h, c2, -e2 * h))) /
         (4 * h * h);
}

// d^2/dz_a dz_b = 1/4 (dx_a - i dy_a)(dx_b - i dy_b)
cplx central_second(const EvalFunction &f, const JacobiPoint &p, int a, int b, double h) {
  const cplx xx = central_partial2(f, p, a, 1.0, b, 1.0, h);
  const cplx xy = central_partial2(f, p, a, 1.0, b, kI, h);
  const cplx yx = central_partial2(f, p, a, kI, b, 1.0, h);
  const cplx yy = central_partial2(f, p, a, kI, b, kI, h);
  return 0.25 * (xx - kI * xy - kI * yx - yy);
}

template <class Rule>
DerivativeEstimate richardson(Rule rule, double h, int levels) {
  if (levels < 1)
    throw PreconditionError("richardson_levels must be at least 1");
  std::vector<std::vector<cplx>> T(levels + 1);
  for (int i = 0; i <= levels; ++i) {
    T[i].push_back(rule(h / std::pow(2.0, i)));
    double fac = 4;
    for (int j = 1; j <= i; ++j, fac *= 4)
      T[i].push_back(T[i][j - 1] + (T[i][j - 1] - T[i - 1][j - 1]) / (fac - 1));
  }
  return {T[levels][levels], std::abs(T[levels][levels] - T[levels - 1][levels - 1])};
}

// ---- Cauchy integrals on circles; the half-node rule reuses every other node

// the trapezoid rule converges geometrically, so doubling the nodes roughly
// squares the relative error of the half rule; roundoff sets a floor
double geometric_error(double diff, double value, double l1) {
  const double rel = diff / std::max(value, 1e-300);
  return std::max(diff * std::min(1.0, rel), 1e-14 * l1);
}

DerivativeEstimate cauchy_1d(const EvalFunction &f, const JacobiPoint &p, int c, int order,
                             double r, int n) {
  cplx full = 0, half = 0;
  double l1 = 0;
  for (int j = 0; j < n; ++j) {
    const cplx w = std::polar(1.0, 2 * kPi * j / n);
    const cplx t = f(shifted(p, c, r * w)) * std::pow(w, -order);
    full += t;
    l1 += std::abs(t);
    if (j % 2 == 0)
      half += t;
  }
  const double scale = (order == 1 ? 1 : 2) / std::pow(r, order);
  const cplx a = scale * full / double(n);
  const cplx b = scale * half / double(n / 2);
  return {a, geometric_error(std::abs(a - b), std::abs(a), scale * l1 / n)};
}

DerivativeEstimate cauchy_2d(const EvalFunction &f, const JacobiPoint &p, int c1, int c2, double r,
                             int n) {
  cplx full = 0, half = 0;
  double l1 = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const cplx w1 = std::polar(1.0, 2 * kPi * j / n), w2 = std::polar(1.0, 2 * kPi * k / n);
      const cplx t = f(shifted2(p, c1, r * w1, c2, r * w2)) / (w1 * w2);
      full += t;
      l1 += std::abs(t);
      if (j % 2 == 0 && k % 2 == 0)
        half += t;
    }
  const double scale = 1 / (r * r);
  const cplx a = scale * full / (double(n) * n);
  const cplx b = scale * half / (double(n / 2) * (n / 2));
  return {a, geometric_error(std::abs(a - b), std::abs(a), scale * l1 / (double(n) * n))};
}

} // namespace

DerivativeEstimate numeric_derivative(const EvalFunction &f, const JacobiPoint &p, Deriv which,
                                      const DerivativeScheme &scheme, int coord, int coord2) {
  const int c = which == Deriv::dtau ? -1 : coord;
  const int c2 = coord2 < 0 ? c : coord2;
  check_coord(p, c);
  check_coord(p, c2);
  if (scheme.base_step <= 0 || scheme.max_radius <= 0)
    throw PreconditionError("derivative steps must be positive");
  const double v = p.tau.imag();
  DerivativeEstimate est;
  if (scheme.mode == DerivMode::cauchy && which != Deriv::dzbar) {
    if (scheme.cauchy_nodes < 4 || scheme.cauchy_nodes % 2)
      throw PreconditionError("cauchy_nodes must be even and at least 4");
    const double r = std::min(v / 2, scheme.max_radius);
    const bool mixed = which == Deriv::dz2 && c2 != c;
    // fast oscillation on the circle needs more nodes
    for (int n = scheme.cauchy_nodes;; n *= 2) {
      est = mixed ? cauchy_2d(f, p, c, c2, r, n)
                  : cauchy_1d(f, p, c, which == Deriv::dz2 ? 2 : 1, r, n);
      if (est.error <= 1e-12 * std::max(1.0, std::abs(est.value)) || n >= (mixed ? 128 : 512))
        break;
    }
  } else {
    if ((c < 0 || c2 < 0) && scheme.base_step >= v)
      throw PreconditionError("step leaves the upper half plane");
    const bool conj = which == Deriv::dzbar;
    if (which == Deriv::dz2)
      est = richardson([&](double h) { return central_second(f, p, c, c2, h); }, scheme.base_step,
                       scheme.richardson_levels);
    else
      est = richardson([&](double h) { return central_first(f, p, c, conj, h); },
                       scheme.base_step, scheme.richardson_levels);
  }
  if (!std::isfinite(est.value.real()) || !std::isfinite(est.value.imag()))
    throw DerivativeError("derivative is not finite");
  if (!(est.error <= scheme.max_rel_error * std::max(1.0, std::abs(est.value))))
    throw DerivativeError("derivative estimate unstable (error " + std::to_string(est.error) + ")");
  return est;
}

cplx heat_apply(const EvalFunction &f, const IndexMatrix &M, const JacobiPoint &p,
                const DerivativeScheme &scheme) {
  const int j = p.dim();
  if (M.rows() != j || M.cols() != j || j > 2)
    throw DimensionError("index matrix does not match the point");
  IndexMatrix adj(j, j);
  if (j == 1)
    adj(0, 0) = 1;
  else
    adj << M(1, 1), -M(0, 1), -M(1, 0), M(0, 0);
  const double det = j == 1 ? M(0, 0) : M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
  cplx out = 8.0 * kPi * kI * det * numeric_derivative(f, p, Deriv::dtau, scheme).value;
  for (int a = 0; a < j; ++a)
    for (int b = 0; b < j; ++b)
      if (adj(a, b) != 0)
        out -= adj(a, b) * numeric_derivative(f, p, Deriv::dz2, scheme, a, b).value;
  return out;
}

EvalFunction heat_function(const EvalFunction &f, const IndexMatrix &M,
                           const DerivativeScheme &scheme) {
  EvalFunction out;
  out.ctx = f.ctx ? make_context(f.ctx->k + 2, f.ctx->M, f.ctx->multiplier) : nullptr;
  out.name = "L(" + f.name + ")";
  out.pole_guard = f.pole_guard;
  out.truncation = f.truncation;
  out.eval = [f, M, scheme](const JacobiPoint &p) { return heat_apply(f, M, p, scheme); };
  return out;
}

cplx heat_iterate(const EvalFunction &f, const IndexMatrix &M, int power, const JacobiPoint &p,
                  const DerivativeScheme &scheme) {
  if (power == 1)
    return heat_apply(f, M, p, scheme);
  if (power == 2)
    return heat_apply(heat_function(f, M, scheme), M, p, scheme);
  throw PreconditionError("heat_iterate supports power 1 or 2");
}

namespace {

// distance from z to the nearest point of Z tau + Z
double lattice_distance(cplx tau, cplx z) {
  double d = INFINITY;
  const double n0 = std::round(z.imag() / tau.imag());
  for (double n = n0 - 1; n <= n0 + 1; ++n) {
    const cplx s = z - n * tau;
    d = std::min(d, std::abs(s - std::round(s.real())));
  }
  return d;
}

// the tau-circle must keep z off Z tau' + Z; z = n tau' + k at tau' = (z - k)/n
double tau_pole_distance(cplx tau, cplx z) {
  double d = INFINITY;
  for (int n : {-3, -2, -1, 1, 2, 3}) {
    const cplx c = z / double(n) - tau;
    // nearest k/n
    const double k = std::round(-c.real() * n);
    for (double kk = k - 1; kk <= k + 1; ++kk)
      d = std::min(d, std::abs(c - kk / n));
  }
  return d;
}

} // namespace

cplx lerch_heat(double a, double b, cplx tau, cplx z, const DerivativeScheme &scheme,
                const TruncationPolicy &pol) {
  if (tau.imag() <= 0)
    throw PreconditionError("tau must lie in the upper half plane");
  EvalFunction f;
  f.ctx = make_context(0.5, -0.5);
  f.name = "f_ab";
  f.eval = [a, b, pol](const JacobiPoint &p) { return lerch_fab(a, b, p.tau, p.z(0), pol); };
  const auto p = make_point(tau, z);
  DerivativeScheme st = scheme, sz = scheme;
  st.max_radius = std::min(scheme.max_radius, tau_pole_distance(tau, z) / 2);
  sz.max_radius = std::min(scheme.max_radius, lattice_distance(tau, z) / 2);
  if (scheme.mode == DerivMode::central && scheme.base_step >= 2 * std::min(st.max_radius, sz.max_radius))
    throw PoleProximityError("difference stencil reaches a pole of f_ab");
  return 4.0 * kPi * kI * numeric_derivative(f, p, Deriv::dtau, st).value +
         numeric_derivative(f, p, Deriv::dz2, sz).value;
}

MockDualResult mock_dual_residual(double a, double b, cplx tau, cplx z,
                                  const DerivativeScheme &scheme, const TruncationPolicy &pol) {
  if (tau.imag() <= 0)
    throw PreconditionError("tau must lie in the upper half plane");
  const cplx w = a * tau + b;
  const cplx thw = theta_odd(tau, w, pol), thz = theta_odd(tau, z, pol);
  if (std::abs(thw) < pole_eps || lattice_distance(tau, w) < pole_eps)
    throw PoleProximityError("theta(tau, a tau + b) vanishes");
  if (std::abs(thz) < pole_eps || lattice_distance(tau, z) < pole_eps)
    throw PoleProximityError("theta(tau, z) vanishes");
  MockDualResult r;
  r.lhs = lerch_heat(a, b, tau, z, scheme, pol);
  const cplx pre = std::exp(2.0 * kPi * kI * a * z - kPi * kI * a * a * tau) * 16.0 * kPi * kPi *
                   std::pow(eta(tau, pol), 6) / (thw * thz * thz * thz);
  const cplx bracket = alpha(1, a, b, tau, pol) * theta0(2.0 * tau, 2.0 * z + w, pol) -
                       alpha(0, a, b, tau, pol) * theta1(2.0 * tau, 2.0 * z + w, pol);
  r.rhs_printed = pre * bracket;
  r.rhs = r.rhs_printed / thw;
  r.residual = std::abs(r.lhs - r.rhs);
  r.residual_printed = std::abs(r.lhs - r.rhs_printed);
  return r;
}

} // namespace jpr
