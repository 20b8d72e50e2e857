#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/rational.hpp>

#include "jpr/error.hpp"
#include "jpr/special.hpp"
#include "jpr/theta.hpp"

using namespace jpr;

namespace {

const double pi = std::numbers::pi;
const cplx I1(0, 1);

IndexMatrix diag(double a, double b) {
  IndexMatrix M = IndexMatrix::Zero(2, 2);
  M(0, 0) = a;
  M(1, 1) = b;
  return M;
}

// sum_l c_l theta_{m,l}(tau, z), w-independent
EvalFunction theta_combination(int m, std::vector<cplx> c, double mw = 0) {
  EvalFunction f;
  f.ctx = make_context(0, diag(m, mw));
  f.name = "theta_comb";
  f.eval = [m, c](const JacobiPoint &p) {
    cplx s = 0;
    for (int l = 0; l < 2 * m; ++l)
      s += c[l] * theta_ml(m, l, p.tau, p.z(0));
    return s;
  };
  return f;
}

int rep(int l, int m) { return l > m ? l - 2 * m : l; }

// prescribed h_l = c_l q^{-r^2/4m} cos(2 pi w), r = l mod 2m in (-m, m];
// c_l = c_{-l} keeps the function even
EvalFunction synthetic(int m, std::vector<cplx> c) {
  EvalFunction f;
  f.ctx = make_context(0, diag(m, 1));
  f.name = "synthetic";
  f.eval = [m, c](const JacobiPoint &p) {
    cplx s = 0;
    for (int l = 0; l < 2 * m; ++l)
      s += c[l] * std::exp(-2.0 * pi * I1 * double(rep(l, m) * rep(l, m)) * p.tau / (4.0 * m)) *
           theta_ml(m, l, p.tau, p.z(0));
    return s * std::cos(2 * pi * p.z(1));
  };
  return f;
}

// theta(tau,z)^2 / eta^6: weak Jacobi form of weight -2, index 1
EvalFunction phi_m2_1() {
  EvalFunction f;
  f.ctx = make_context(-2, diag(1, 0));
  f.name = "phi_-2,1";
  f.eval = [](const JacobiPoint &p) {
    const cplx t = theta_odd(p.tau, p.z(0));
    return t * t / std::pow(eta(p.tau), 6);
  };
  return f;
}

std::vector<cplx> symmetric_coeffs(std::mt19937_64 &rng, int m) {
  std::uniform_real_distribution<double> d(-2, 2);
  std::vector<cplx> c(2 * m);
  for (int l = 0; l <= m; ++l) {
    c[l] = cplx(d(rng), d(rng));
    c[(2 * m - l) % (2 * m)] = c[l];
  }
  return c;
}

JacobiPoint rand3(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5), v(0.7, 1.5), s(-0.4, 0.4);
  return make_point(cplx(u(rng), v(rng)), cplx(s(rng), s(rng)), cplx(s(rng), s(rng)));
}

} // namespace

TEST_CASE("Gauss-Legendre rule") {
  for (int n : {1, 2, 7, 128}) {
    const auto &g = gauss_legendre(n);
    REQUIRE(int(g.x.size()) == n);
    double w = 0, x2 = 0;
    for (int i = 0; i < n; ++i) {
      w += g.w[i];
      x2 += g.w[i] * g.x[i] * g.x[i];
    }
    CHECK(std::abs(w - 2) < 1e-13);
    if (n >= 2)
      CHECK(std::abs(x2 - 2.0 / 3) < 1e-13);
  }
}

TEST_CASE("orthogonality of theta coefficients") {
  const cplx tau(0.1, 1.1), w(0.2, 0.1);
  for (int m = 1; m <= 3; ++m)
    for (int l0 = 0; l0 < 2 * m; ++l0) {
      std::vector<cplx> c(2 * m, 0.0);
      c[l0] = 1;
      const auto f = theta_combination(m, c);
      for (int l = 0; l < 2 * m; ++l)
        CHECK(std::abs(extract_h(f, m, l, tau, w) - (l == l0 ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("synthetic coefficients are recovered") {
  const auto f = theta_combination(1, {2.0, cplx(3, 1)});
  for (const cplx tau : {I1, cplx(-0.3, 0.8)}) {
    CHECK(std::abs(extract_h(f, 1, 0, tau, 0.0) - 2.0) < 1e-10);
    CHECK(std::abs(extract_h(f, 1, 1, tau, 0.0) - cplx(3, 1)) < 1e-10);
    CHECK(reconstruct_residual(f, 1, make_point(tau, cplx(0.2, 0.1), 0.0)) < 1e-10);
  }
  std::mt19937_64 rng(5);
  for (int m = 1; m <= 3; ++m) {
    const auto c = symmetric_coeffs(rng, m);
    const auto g = synthetic(m, c);
    const auto p = rand3(rng);
    const auto prof = theta_profile(g, m);
    REQUIRE(prof.components.size() == std::size_t(2 * m));
    for (int l = 0; l < 2 * m; ++l) {
      const cplx want = c[l] * std::exp(-2.0 * pi * I1 * double(rep(l, m) * rep(l, m)) * p.tau / (4.0 * m)) *
                        std::cos(2 * pi * p.z(1));
      CHECK(std::abs(prof.components[l](make_point(p.tau, p.z(1))) - want) <
            1e-10 * std::max(1.0, std::abs(want)));
    }
    CHECK(reconstruct_residual(g, m, p) < 1e-10 * std::max(1.0, std::abs(g(p))));
  }
}

TEST_CASE("contour independence") {
  ThetaOptions a, b;
  b.base = 0.37;
  std::mt19937_64 rng(7);
  const auto f = phi_m2_1();
  for (int i = 0; i < 4; ++i) {
    const auto p = rand3(rng);
    for (int l = 0; l < 2; ++l) {
      const cplx ha = extract_h(f, 1, l, p.tau, p.z(1), a);
      const cplx hb = extract_h(f, 1, l, p.tau, p.z(1), b);
      CHECK(std::abs(ha - hb) < 1e-10 * std::max(1.0, std::abs(ha)));
    }
  }
}

TEST_CASE("doubling the nodes does not move the coefficients") {
  ThetaOptions a, b;
  b.min_nodes = 256;
  const auto f = phi_m2_1();
  const auto p = make_point(cplx(0.2, 0.9), cplx(0.1, 0.2), 0.0);
  for (int l = 0; l < 2; ++l) {
    const cplx ha = extract_h(f, 1, l, p.tau, 0.0, a);
    const cplx hb = extract_h(f, 1, l, p.tau, 0.0, b);
    CHECK(std::abs(ha - hb) < 1e-11 * std::max(1.0, std::abs(ha)));
  }
  CHECK(std::abs(reconstruct_residual(f, 1, p, a) - reconstruct_residual(f, 1, p, b)) < 1e-10);
}

TEST_CASE("condition (B) is enforced") {
  EvalFunction f;
  f.ctx = make_context(0, diag(1, 0));
  f.eval = [](const JacobiPoint &p) { return std::exp(2 * pi * I1 * p.z(0)) + p.z(0) * p.z(0); };
  CHECK_THROWS_AS(extract_h(f, 1, 0, I1, 0.0), PreconditionError);
  const auto g = theta_combination(2, {1.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(extract_h(g, 1, 0, I1, 0.0), PreconditionError);
  const auto one_dim = EvalFunction{[](const JacobiPoint &) { return cplx(1); },
                                    make_context(0, 1.0), {}, {}, "one"};
  CHECK_THROWS_AS(extract_h(one_dim, 1, 0, I1, 0.0), DimensionError);
  ThetaOptions tight;
  tight.max_nodes = 128;
  CHECK_THROWS_AS(extract_h(phi_m2_1(), 1, 0, I1, 0.0, tight), QuadratureError);
}

TEST_CASE("H* decomposition") {
  // H* = sum H(D) q^{(D+r^2)/4} xi^r, so h_l = sum_{D = -l^2 mod 4} H(D) q^{D/4}
  const int N = 12;
  EvalFunction f;
  f.ctx = make_context(1.5, diag(1, 0));
  f.name = "H*";
  f.eval = [](const JacobiPoint &p) { return hstar(p.tau, p.z(0), N); };
  const cplx tau = 2.0 * I1;
  CHECK(reconstruct_residual(f, 1, make_point(tau, cplx(0.15, 0.1), 0.0)) < 1e-6);
  for (int l = 0; l < 2; ++l) {
    cplx want = 0;
    for (int D = 0; D <= 4 * N; ++D)
      if ((D + l * l) % 4 == 0)
        want += boost::rational_cast<double>(hurwitz_H(D)) * std::exp(pi * I1 * double(D) * tau / 2.0);
    CHECK(std::abs(extract_h(f, 1, l, tau, 0.0) - want) < 1e-10);
  }
}

TEST_CASE("theta transformation formula") {
  CHECK(theta_transform_residual(1, 0, I1, 0.2) < 1e-10);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.5, 0.5), v(0.5, 2.0), s(-0.5, 0.5);
  double worst = 0;
  for (int m = 1; m <= 3; ++m)
    for (int i = 0; i < 10; ++i) {
      const cplx tau(u(rng), v(rng)), z(s(rng), s(rng));
      for (int mu = 0; mu < 2 * m; ++mu)
        worst = std::max(worst, theta_transform_residual(m, mu, tau, z));
    }
  CHECK(worst < 1e-9);
  for (int m = 1; m <= 4; ++m) {
    const auto U = theta_U(m);
    const double d = (U.adjoint() * U - Eigen::MatrixXcd::Identity(2 * m, 2 * m)).norm();
    CHECK(d < 1e-12);
  }
  CHECK_THROWS_AS(theta_transform_residual(1, 0, cplx(0, -1), 0.0), PreconditionError);
}

TEST_CASE("periods in theta form") {
  std::mt19937_64 rng(13);
  // a true Jacobi form has no periods
  const auto f = phi_m2_1();
  for (int i = 0; i < 3; ++i) {
    const auto p = rand3(rng);
    for (const cplx P : theta_periods(f, 1, p.tau, p.z(1)))
      CHECK(std::abs(P) < 1e-8);
    CHECK(prop43_residual(f, 1, 2, p) < 1e-6);
  }
  for (int m = 1; m <= 2; ++m) {
    const auto g = synthetic(m, symmetric_coeffs(rng, m));
    for (int i = 0; i < 3; ++i) {
      const auto p = rand3(rng);
      const double scale = std::max(1.0, std::abs(g(p)));
      CHECK(prop43_residual(g, m, 2, p) < 1e-7 * scale);
      CHECK(prop43_residual(g, m, 3, p) < 1e-6 * scale);
    }
  }
  CHECK_THROWS_AS(prop43_residual(f, 1, 4, rand3(rng)), PreconditionError);
}
