#include "jpr/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <tuple>

#include <boost/integer/mod_inverse.hpp>

#include "jpr/error.hpp"

namespace jpr {

CosetList enumerate_cosets(int C, int L) {
  if (C < 1 || L < 0)
    throw PreconditionError("need C >= 1 and L >= 0");
  CosetList out;
  out.bound_C = C;
  out.bound_L = L;
  auto push = [&](Int a, Int b, Int c, Int d) {
    for (Int lam = -L; lam <= L; ++lam) {
      Mat2i A;
      A << a, b, c, d;
      IntVec l(1), m(1);
      l << a * lam;
      m << b * lam;
      out.reps.push_back({make_element(A, l, m), c, d, lam});
    }
  };
  push(1, 0, 0, 1);
  for (Int c = 1; c <= C; ++c)
    for (Int d = -C; d <= C; ++d) {
      if (std::gcd(c, d) != 1)
        continue;
      // a d = 1 mod c, 0 <= a < c
      const Int dm = ((d % c) + c) % c;
      const Int a = c == 1 ? 0 : boost::integer::mod_inverse(dm, c);
      const Int b = (a * d - 1) / c;
      push(a, b, c, d);
    }
  std::stable_sort(out.reps.begin(), out.reps.end(), [](const CosetRep &x, const CosetRep &y) {
    return std::make_tuple(x.c, std::abs(x.d), x.d, x.lambda) <
           std::make_tuple(y.c, std::abs(y.d), y.d, y.lambda);
  });
  return out;
}

namespace {

void require_poincare_context(const AutomorphyContext &ctx) {
  if (ctx.dim() != 1)
    throw DimensionError("Poincare series are implemented for j = 1");
  const double k = ctx.k;
  if (k < 4 || std::fmod(k, 2.0) != 0)
    throw PreconditionError("weight must be even and at least 4");
  if (!(ctx.M(0, 0) > 0))
    throw PreconditionError("index must be positive");
  if (std::abs(multiplier_extend(ctx, el::minusI()) - 1.0) > 1e-12)
    throw PreconditionError("only multiplier systems with omega(-I) = 1 are supported");
}

template <class Term>
PoincareSum truncated_sum(int C, int L, Term term) {
  const auto cos = enumerate_cosets(C, L);
  PoincareSum out;
  cplx halfC = 0, halfL = 0;
  const Int hc = std::max(1, C / 2), hl = L / 2;
  for (const auto &r : cos.reps) {
    const cplx t = term(r.g);
    out.value += t;
    if (std::max(std::abs(r.c), std::abs(r.d)) <= hc)
      halfC += t;
    if (std::abs(r.lambda) <= hl)
      halfL += t;
    ++out.terms;
  }
  if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
    throw TruncationError("Poincare sum is not finite");
  out.tail = std::abs(out.value - halfC) + std::abs(out.value - halfL);
  return out;
}

void check_cocycle_preconditions(const PeriodSystem &ps, const JacobiPoint &p) {
  const double a = std::abs(cocycle_extend(ps, el::G0(), p));
  const double b = std::abs(cocycle_extend(ps, el::G4(), p));
  if (!(a < 1e-8) || !(b < 1e-8))
    throw PreconditionError("cocycle must vanish on [S,0] and [I,(0,1)]");
}

} // namespace

PoincareSum eisenstein_g(const AutomorphyContext &ctx, const JacobiPoint &p, int C, int L) {
  require_poincare_context(ctx);
  if (p.dim() != 1)
    throw DimensionError("point must be (tau, z)");
  return truncated_sum(C, L, [&](const GroupElement &g) { return slash_factor(ctx, g, p); });
}

cplx poincare_phi_reps(const PeriodSystem &cocycle, const AutomorphyContext &ctx,
                       const JacobiPoint &p, const std::vector<GroupElement> &reps) {
  require_poincare_context(ctx);
  check_cocycle_preconditions(cocycle, p);
  cplx s = 0;
  for (const auto &g : reps)
    s += slash_factor(ctx, g, p) * cocycle_extend(cocycle, g, p);
  return s;
}

PoincareSum poincare_phi(const PeriodSystem &cocycle, const AutomorphyContext &ctx,
                         const JacobiPoint &p, int C, int L) {
  require_poincare_context(ctx);
  if (p.dim() != 1 || cocycle.context()->dim() != 1)
    throw DimensionError("Poincare series are implemented for j = 1");
  check_cocycle_preconditions(cocycle, p);
  return truncated_sum(C, L, [&](const GroupElement &g) {
    return slash_factor(ctx, g, p) * cocycle_extend(cocycle, g, p);
  });
}

FunctionalEqResult functional_eq_residual(const PeriodSystem &cocycle,
                                          const AutomorphyContext &ctx, const GroupElement &gamma,
                                          const JacobiPoint &p, int C, int L) {
  const auto &rctx = *cocycle.context();
  const JacobiPoint gp = act(gamma, p);
  const cplx Jr = slash_factor(rctx, gamma, p), Jk = slash_factor(ctx, gamma, p);
  FunctionalEqResult out;
  out.lhs = Jr * poincare_phi(cocycle, ctx, gp, C, L).value;
  out.rhs = (poincare_phi(cocycle, ctx, p, C, L).value -
             eisenstein_g(ctx, p, C, L).value * cocycle_extend(cocycle, gamma, p)) /
            Jk;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

FunctionalEqResult construct_F_residual(const PeriodSystem &cocycle, double r,
                                        const AutomorphyContext &ctx, const GroupElement &gamma,
                                        const JacobiPoint &p, int C, int L) {
  const auto &rctx = *cocycle.context();
  if (rctx.k != r)
    throw ContextMismatchError("weight r does not match the cocycle");
  const JacobiPoint gp = act(gamma, p);
  const cplx g0 = eisenstein_g(ctx, p, C, L).value, g1 = eisenstein_g(ctx, gp, C, L).value;
  if (std::abs(g0) < pole_eps || std::abs(g1) < pole_eps)
    throw PoleProximityError("Eisenstein series vanishes near the point");
  const cplx F0 = -poincare_phi(cocycle, ctx, p, C, L).value / g0;
  const cplx F1 = -poincare_phi(cocycle, ctx, gp, C, L).value / g1;
  FunctionalEqResult out;
  out.lhs = slash_factor(rctx, gamma, p) * F1 - F0;
  out.rhs = cocycle_extend(cocycle, gamma, p);
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

LemmaBoundsReport lemma_bounds_at(Int c, Int d, cplx tau) {
  if (tau.imag() <= 0)
    throw PreconditionError("tau must lie in the upper half plane");
  const double v = tau.imag(), t2 = std::norm(tau), cd = double(c * c + d * d);
  const double mid = std::norm(double(c) * tau + double(d));
  const double lo = v * v / (1 + 4 * t2) * cd, hi = 2 * (t2 + 1 / (v * v)) * cd;
  LemmaBoundsReport r;
  r.samples = 1;
  r.min_lower_ratio = mid / lo;
  r.min_upper_ratio = hi / mid;
  r.violations = (lo <= mid ? 0 : 1) + (mid <= hi ? 0 : 1);
  return r;
}

LemmaBoundsReport lemma_bounds_check(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Int> cd(-50, 50);
  std::uniform_real_distribution<double> u(-5, 5), logv(std::log(0.1), std::log(10.0));
  LemmaBoundsReport out;
  for (int i = 0; i < samples; ++i) {
    Int c = cd(rng), d = cd(rng);
    if (c == 0 && d == 0)
      d = 1;
    const auto r = lemma_bounds_at(c, d, cplx(u(rng), std::exp(logv(rng))));
    out.samples += 1;
    out.violations += r.violations;
    out.min_lower_ratio = std::min(out.min_lower_ratio, r.min_lower_ratio);
    out.min_upper_ratio = std::min(out.min_upper_ratio, r.min_upper_ratio);
  }
  return out;
}

} // namespace jpr
