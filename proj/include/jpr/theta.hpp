#pragma once

#include <vector>

#include <Eigen/Core>

#include "jpr/automorphy.hpp"

namespace jpr {

// Functions here act on points (tau, z, w); the context index is
// diag(m, m_w) with m the theta index in z.
struct ThetaOptions {
  double base = 0;        // contour [base, base + 1] on Im z = 0
  int min_nodes = 128;    // Gauss-Legendre nodes, doubled until stable
  int max_nodes = 4096;
  double abs_tol = 1e-12;
  double precondition_tol = 1e-6;
  TruncationPolicy pol;
};

// Gauss-Legendre rule on [-1, 1]
struct GaussRule {
  std::vector<double> x, w;
};
const GaussRule &gauss_legendre(int n);

// h_ell(tau, w) = e^{-pi i r^2 tau / 2m} int_p^{p+1} phi(tau, z, w) e^{-2 pi i r z} dz,
// r = ell mod 2m taken in (-m, m]
cplx extract_h(const EvalFunction &phi, int m, int ell, cplx tau, cplx w,
               const ThetaOptions &opt = {});

struct ThetaProfile {
  int m = 1;
  std::vector<EvalFunction> components; // h_0 .. h_{2m-1} on points (tau, w)
};
ThetaProfile theta_profile(const EvalFunction &phi, int m, const ThetaOptions &opt = {});

// |phi - sum_ell h_ell theta_{m,ell}| at p
double reconstruct_residual(const EvalFunction &phi, int m, const JacobiPoint &p,
                            const ThetaOptions &opt = {});

// theta_{m,mu}(-1/tau, z/tau) against sqrt(tau/2mi) e^{2 pi i m z^2/tau} sum_nu U theta_{m,nu}
double theta_transform_residual(int m, int mu, cplx tau, cplx z, const TruncationPolicy &pol = {});
Eigen::MatrixXcd theta_U(int m);

// Periods of phi under [T,0] in theta form: phi|T - phi = sum_nu P_nu theta_{m,nu} with
// P_nu = (h|T)_nu - h_nu and (h|T)_nu the vector-valued slash of (h_ell)
std::vector<cplx> theta_periods(const EvalFunction &phi, int m, cplx tau, cplx w,
                                const ThetaOptions &opt = {});

// part 2: |(phi|T - phi)(p) - sum_nu P_nu theta_nu(p)|
// part 3: |(phi|g - phi)(p) - (P - P|[-I, lam_w = 1])(p)|, g = [I, lam_w = 1], with P the
// theta form of phi|T - phi
double prop43_residual(const EvalFunction &phi, int m, int part, const JacobiPoint &p,
                       const ThetaOptions &opt = {});

} // namespace jpr
