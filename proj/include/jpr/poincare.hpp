#pragma once

#include <cstdint>
#include <vector>

#include "jpr/period.hpp"

namespace jpr {

struct CosetRep {
  GroupElement g; // [I,(lam,0)][A,0] = [A,(a lam, b lam)]
  Int c = 0, d = 1, lambda = 0;
};

struct CosetList {
  std::vector<CosetRep> reps; // sorted by (c, |d|, d, lambda)
  int bound_C = 0, bound_L = 0;
};

// coprime (c,d) with c > 0 or (c,d) = (0,1), max(|c|,|d|) <= C; 0 <= a < c
// (a = 1 for c = 0); |lambda| <= L
CosetList enumerate_cosets(int C, int L);

struct PoincareSum {
  cplx value = 0;
  double tail = 0; // |S - S(C/2)| + |S - S(L/2)|
  std::size_t terms = 0;
};

// g = sum omega(gamma) j_{k,m}(gamma, p); k even >= 4, m > 0, omega(-I) = 1
PoincareSum eisenstein_g(const AutomorphyContext &ctx, const JacobiPoint &p, int C, int L);

// Phi = sum J_k(M, p) phi_M(p) with J = omega j in ctx and phi_M from the cocycle.
// Requires phi_{G0} = phi_{[I,(0,1)]} = 0 at p to 1e-8.
PoincareSum poincare_phi(const PeriodSystem &cocycle, const AutomorphyContext &ctx,
                         const JacobiPoint &p, int C, int L);
// same sum over an explicit representative list
cplx poincare_phi_reps(const PeriodSystem &cocycle, const AutomorphyContext &ctx,
                       const JacobiPoint &p, const std::vector<GroupElement> &reps);

struct FunctionalEqResult {
  cplx lhs = 0, rhs = 0;
  double residual = 0;
};

// (Phi|_r gamma)(p) against J_k(gamma,p)^{-1} (Phi(p) - g(p) phi_gamma(p)); r is the
// cocycle's weight
FunctionalEqResult functional_eq_residual(const PeriodSystem &cocycle,
                                          const AutomorphyContext &ctx, const GroupElement &gamma,
                                          const JacobiPoint &p, int C, int L);

// F = -Phi/g: (F|_r gamma)(p) - F(p) - phi_gamma(p)
FunctionalEqResult construct_F_residual(const PeriodSystem &cocycle, double r,
                                        const AutomorphyContext &ctx, const GroupElement &gamma,
                                        const JacobiPoint &p, int C, int L);

// v^2/(1 + 4|tau|^2) (c^2 + d^2) <= |c tau + d|^2 <= 2(|tau|^2 + v^-2)(c^2 + d^2)
struct LemmaBoundsReport {
  int samples = 0;
  int violations = 0;
  double min_lower_ratio = INFINITY; // |c tau + d|^2 / lower bound
  double min_upper_ratio = INFINITY; // upper bound / |c tau + d|^2
};
LemmaBoundsReport lemma_bounds_at(Int c, Int d, cplx tau);
LemmaBoundsReport lemma_bounds_check(int samples, std::uint64_t seed = 1);

} // namespace jpr
