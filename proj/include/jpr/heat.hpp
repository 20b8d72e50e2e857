#pragma once

#include "jpr/automorphy.hpp"

namespace jpr {

enum class Deriv { dtau, dz, dz2, dzbar };
enum class DerivMode { central, cauchy };

// cauchy mode is only valid in directions where f is holomorphic; dzbar
// always uses central differences
struct DerivativeScheme {
  double base_step = 1e-3;
  int richardson_levels = 1;
  DerivMode mode = DerivMode::cauchy;
  int cauchy_nodes = 32;   // doubled while the error estimate is too large
  double max_radius = 0.4; // circle radius min(v/2, max_radius)
  double max_rel_error = 1e-4;
};

struct DerivativeEstimate {
  cplx value = 0;
  double error = 0; // Richardson disagreement, or node-halving difference
};

// derivative in tau, z_coord, or d^2/dz_coord dz_coord2 (dz2)
DerivativeEstimate numeric_derivative(const EvalFunction &f, const JacobiPoint &p, Deriv which,
                                      const DerivativeScheme &scheme = {}, int coord = 0,
                                      int coord2 = -1);

// L_M = 8 pi i |M| d/dtau - (d/dz)^T adj(M) (d/dz); for j = 1 this is 8 pi i m d/dtau - d^2/dz^2
cplx heat_apply(const EvalFunction &f, const IndexMatrix &M, const JacobiPoint &p,
                const DerivativeScheme &scheme = {});
EvalFunction heat_function(const EvalFunction &f, const IndexMatrix &M,
                           const DerivativeScheme &scheme = {});
// L_M^power f at p, power 1 or 2
cplx heat_iterate(const EvalFunction &f, const IndexMatrix &M, int power, const JacobiPoint &p,
                  const DerivativeScheme &scheme = {});

// (4 pi i d/dtau + d^2/dz^2) f_{a,b}
cplx lerch_heat(double a, double b, cplx tau, cplx z, const DerivativeScheme &scheme = {},
                const TruncationPolicy &pol = {});

struct MockDualResult {
  cplx lhs = 0;
  cplx rhs = 0;         // theta(tau, a tau + b)^2 in the denominator
  cplx rhs_printed = 0; // theta(tau, a tau + b) to the first power
  double residual = 0;
  double residual_printed = 0;
};

// e^{2 pi i a z - pi i a^2 tau} 16 pi^2 eta^6 / (theta(tau, a tau + b)^2 theta(tau, z)^3)
//   * (alpha_1 theta_0(2 tau, 2z + a tau + b) - alpha_0 theta_1(2 tau, 2z + a tau + b))
MockDualResult mock_dual_residual(double a, double b, cplx tau, cplx z,
                                  const DerivativeScheme &scheme = {},
                                  const TruncationPolicy &pol = {});

} // namespace jpr
