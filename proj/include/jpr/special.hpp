#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <utility>

#include <boost/rational.hpp>

#include "jpr/policy.hpp"

namespace jpr {

using cplx = std::complex<double>;
using Rational = boost::rational<std::int64_t>;

// theta(tau,z) = sum_{nu in 1/2+Z} e^{pi i nu^2 tau + 2 pi i nu (z + 1/2)}
cplx theta_odd(cplx tau, cplx z, const TruncationPolicy &pol = {});

enum class ThetaKind { theta0, theta1 };
// sum over n in Z (theta0) or 1/2+Z (theta1) of e^{pi i n^2 tau + 2 pi i n z}
cplx theta_int(ThetaKind kind, cplx tau, cplx z, const TruncationPolicy &pol = {});
inline cplx theta0(cplx tau, cplx z, const TruncationPolicy &pol = {}) {
  return theta_int(ThetaKind::theta0, tau, z, pol);
}
inline cplx theta1(cplx tau, cplx z, const TruncationPolicy &pol = {}) {
  return theta_int(ThetaKind::theta1, tau, z, pol);
}

// sum_{r = ell mod 2m} q^{r^2/4m} xi^r
cplx theta_ml(int m, int ell, cplx tau, cplx z, const TruncationPolicy &pol = {});

// Dedekind eta, pentagonal series and product form
cplx eta(cplx tau, const TruncationPolicy &pol = {});
cplx eta_product(cplx tau, const TruncationPolicy &pol = {});

// beta(x) = int_x^inf u^{-1/2} e^{-pi u} du
double beta_fn(double x);
double beta_quadrature(double x, const TruncationPolicy &pol = {});
double E_fn(double z);
double sgn(double x);

cplx zwegers_R(cplx tau, cplx z, const TruncationPolicy &pol = {});
cplx mordell_h(cplx tau, cplx z, const TruncationPolicy &pol = {});

cplx g_ab(double a, double b, cplx tau, const TruncationPolicy &pol = {});
cplx R_ab(double a, double b, cplx tau, const TruncationPolicy &pol = {},
          double cutoff_scale = 1.0);
// term-by-term closed form of the ray integral
cplx R_ab_series(double a, double b, cplx tau, const TruncationPolicy &pol = {});

cplx lerch_mu(cplx tau, cplx z, cplx w, const TruncationPolicy &pol = {});
// e^{2 pi i a z - pi i a^2 tau} mu(tau, z, a tau + b)
cplx lerch_fab(double a, double b, cplx tau, cplx z, const TruncationPolicy &pol = {});

cplx appell_K1(cplx tau, cplx z, cplx w, const TruncationPolicy &pol = {});
cplx appell_G(cplx tau, cplx z, cplx w, const TruncationPolicy &pol = {});
// -(contour below x = 0) int e^{-pi x^2} e^{-2 pi i x w/s}/(1 - e^{-2 pi x s}) dx,
// s = sqrt(-i tau)
cplx appell_Phi(cplx tau, cplx w, const TruncationPolicy &pol = {});
cplx appell_Phi_shifted(cplx tau, cplx w, const TruncationPolicy &pol = {});

// sum (n + a/2) e^{2 pi i n^2 tau + 2 pi i n (a tau + b)}, n in Z (0) or 1/2+Z (1)
cplx alpha(int variant, double a, double b, cplx tau, const TruncationPolicy &pol = {});

Rational hurwitz_H(std::int64_t n);
int kronecker(std::int64_t a, std::int64_t n);

// (1/16 pi) int_1^inf u^{-3/2} e^{-x u} du
double zagier_beta(double x);

struct QSeriesBi {
  // (exponent of q, exponent of xi) -> coefficient
  std::map<std::pair<Rational, std::int64_t>, Rational> coeffs;
  int order = 0;
  cplx evaluate(cplx tau, cplx z) const;
};

QSeriesBi hstar_series(int N, int r_max);
cplx hstar(cplx tau, cplx z, int N, const TruncationPolicy &pol = {});
cplx e21_nonholomorphic(cplx tau, cplx z, int N, const TruncationPolicy &pol = {});
cplx e21_star(cplx tau, cplx z, int N, const TruncationPolicy &pol = {});

} // namespace jpr
