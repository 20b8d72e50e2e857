#include "jpr/theta.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <boost/math/special_functions/legendre.hpp>

#include "jpr/error.hpp"
#include "jpr/special.hpp"

namespace jpr {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

void require_theta_context(const EvalFunction &phi, int m) {
  if (!phi.ctx || phi.ctx->dim() != 2)
    throw DimensionError("theta decomposition needs a function of (tau, z, w)");
  if (m < 1)
    throw PreconditionError("theta index must be a positive integer");
  const auto &M = phi.ctx->M;
  if (M(0, 1) != 0 || M(0, 0) != double(m))
    throw PreconditionError("context index must be diag(m, m_w) with the given m");
}

JacobiPoint point3(cplx tau, cplx z, cplx w) { return make_point(tau, z, w); }

// representative of ell mod 2m in (-m, m]; keeps q^{-r^2/4m} small
int small_rep(int ell, int m) {
  int r = ((ell % (2 * m)) + 2 * m) % (2 * m);
  return r > m ? r - 2 * m : r;
}

// condition (B): invariance under [I, lam = (1,0), mu = (1,0)], z -> z + tau + 1
void check_condition_B(const EvalFunction &phi, cplx tau, cplx w, const ThetaOptions &opt) {
  IntVec lam(2), mu(2);
  lam << 1, 0;
  mu << 1, 0;
  const GroupElement g = make_element(Mat2i::Identity(), lam, mu);
  const JacobiPoint p = point3(tau, opt.base + 0.3, w);
  const cplx a = slash(phi, g)(p), b = phi(p);
  if (!(std::abs(a - b) <= opt.precondition_tol * std::max(1.0, std::abs(b))))
    throw PreconditionError("function is not quasi-periodic under z -> z + tau + 1");
}

cplx contour_integral(const EvalFunction &phi, int ell, cplx tau, cplx w, const ThetaOptions &opt) {
  double l1 = 0;
  auto rule = [&](int n) {
    const GaussRule &g = gauss_legendre(n);
    cplx s = 0;
    l1 = 0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      const double z = opt.base + 0.5 * (g.x[i] + 1);
      const cplx t = g.w[i] * phi(point3(tau, z, w)) * std::exp(-2.0 * kPi * kI * double(ell) * z);
      s += t;
      l1 += std::abs(t);
    }
    return 0.5 * s;
  };
  int n = opt.min_nodes;
  cplx prev = rule(n);
  while (true) {
    if (2 * n > opt.max_nodes)
      throw QuadratureError("theta coefficient did not stabilise within max_nodes");
    n *= 2;
    const cplx cur = rule(n);
    // the other coefficients can dwarf this one; roundoff then sets the floor
    if (std::abs(cur - prev) <= std::max(opt.abs_tol * std::max(1.0, std::abs(cur)), 1e-13 * l1))
      return cur;
    prev = cur;
  }
}

} // namespace

const GaussRule &gauss_legendre(int n) {
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end())
    return it->second;
  if (n < 1)
    throw PreconditionError("Gauss-Legendre rule needs at least one node");
  GaussRule r;
  // boost returns the nonnegative zeros in increasing order
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  auto weight = [n](double x) {
    const double d = boost::math::legendre_p_prime<double>(n, x);
    return 2 / ((1 - x * x) * d * d);
  };
  for (double x : zeros) {
    r.x.push_back(x);
    r.w.push_back(weight(x));
    if (x != 0) {
      r.x.push_back(-x);
      r.w.push_back(weight(x));
    }
  }
  return cache.emplace(n, std::move(r)).first->second;
}

cplx extract_h(const EvalFunction &phi, int m, int ell, cplx tau, cplx w, const ThetaOptions &opt) {
  require_theta_context(phi, m);
  if (tau.imag() <= 0)
    throw PreconditionError("tau must lie in the upper half plane");
  check_condition_B(phi, tau, w, opt);
  const int r = small_rep(ell, m);
  return std::exp(-kPi * kI * double(r * r) * tau / (2.0 * m)) * contour_integral(phi, r, tau, w, opt);
}

ThetaProfile theta_profile(const EvalFunction &phi, int m, const ThetaOptions &opt) {
  require_theta_context(phi, m);
  ThetaProfile prof;
  prof.m = m;
  auto hctx = make_context(phi.ctx->k - 0.5, phi.ctx->M(1, 1));
  for (int ell = 0; ell < 2 * m; ++ell) {
    EvalFunction h;
    h.ctx = hctx;
    h.name = phi.name + ".h" + std::to_string(ell);
    h.eval = [phi, m, ell, opt](const JacobiPoint &p) {
      return extract_h(phi, m, ell, p.tau, p.z(0), opt);
    };
    prof.components.push_back(std::move(h));
  }
  return prof;
}

double reconstruct_residual(const EvalFunction &phi, int m, const JacobiPoint &p,
                            const ThetaOptions &opt) {
  require_theta_context(phi, m);
  cplx s = 0;
  for (int ell = 0; ell < 2 * m; ++ell)
    s += extract_h(phi, m, ell, p.tau, p.z(1), opt) * theta_ml(m, ell, p.tau, p.z(0), opt.pol);
  return std::abs(phi(p) - s);
}

Eigen::MatrixXcd theta_U(int m) {
  if (m < 1)
    throw PreconditionError("theta index must be a positive integer");
  const int n = 2 * m;
  Eigen::MatrixXcd U(n, n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      U(mu, nu) = std::exp(-2.0 * kPi * kI * double(mu * nu) / double(n)) / std::sqrt(double(n));
  return U;
}

double theta_transform_residual(int m, int mu, cplx tau, cplx z, const TruncationPolicy &pol) {
  if (tau.imag() <= 0)
    throw PreconditionError("tau must lie in the upper half plane");
  const cplx lhs = theta_ml(m, mu, -1.0 / tau, z / tau, pol);
  cplx s = 0;
  for (int nu = 0; nu < 2 * m; ++nu)
    s += std::exp(-2.0 * kPi * kI * double(mu * nu) / (2.0 * m)) * theta_ml(m, nu, tau, z, pol);
  const cplx rhs = std::sqrt(tau / (2.0 * m * kI)) * std::exp(2.0 * kPi * kI * double(m) * z * z / tau) * s;
  return std::abs(lhs - rhs);
}

std::vector<cplx> theta_periods(const EvalFunction &phi, int m, cplx tau, cplx w,
                                const ThetaOptions &opt) {
  require_theta_context(phi, m);
  const auto &ctx = *phi.ctx;
  const double mw = ctx.M(1, 1);
  const int n = 2 * m;
  std::vector<cplx> h(n), hinv(n);
  for (int ell = 0; ell < n; ++ell) {
    h[ell] = extract_h(phi, m, ell, tau, w, opt);
    hinv[ell] = extract_h(phi, m, ell, -1.0 / tau, w / tau, opt);
  }
  const cplx pre = multiplier_extend(ctx, el::T(2)) * std::exp(-ctx.k * std::log(tau)) *
                   std::sqrt(tau / (2.0 * m * kI)) * std::exp(-2.0 * kPi * kI * mw * w * w / tau);
  std::vector<cplx> P(n);
  for (int nu = 0; nu < n; ++nu) {
    cplx s = 0;
    for (int ell = 0; ell < n; ++ell)
      s += std::exp(-2.0 * kPi * kI * double(ell * nu) / double(n)) * hinv[ell];
    P[nu] = pre * s - h[nu];
  }
  return P;
}

double prop43_residual(const EvalFunction &phi, int m, int part, const JacobiPoint &p,
                       const ThetaOptions &opt) {
  require_theta_context(phi, m);
  if (p.dim() != 2)
    throw DimensionError("point must be (tau, z, w)");
  if (part != 2 && part != 3)
    throw PreconditionError("part must be 2 or 3");
  // phi|T - phi in theta form, as a function of (tau, z, w)
  EvalFunction P;
  P.ctx = phi.ctx;
  P.name = phi.name + ".P_T";
  P.eval = [phi, m, opt](const JacobiPoint &q) {
    const auto Pn = theta_periods(phi, m, q.tau, q.z(1), opt);
    cplx s = 0;
    for (int nu = 0; nu < 2 * m; ++nu)
      s += Pn[nu] * theta_ml(m, nu, q.tau, q.z(0), opt.pol);
    return s;
  };
  if (part == 2) {
    const cplx lhs = slash(phi, el::T(2))(p) - phi(p);
    return std::abs(lhs - P(p));
  }
  IntVec lam(2), zero = IntVec::Zero(2);
  lam << 0, 1;
  const GroupElement g = make_element(Mat2i::Identity(), lam, zero);
  const GroupElement mg = make_element(-Mat2i::Identity(), lam, zero);
  const cplx lhs = slash(phi, g)(p) - phi(p);
  const cplx rhs = P(p) - slash(P, mg)(p);
  return std::abs(lhs - rhs);
}

} // namespace jpr
