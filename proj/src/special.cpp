#include "jpr/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "jpr/error.hpp"
#include "jpr/series.hpp"

namespace jpr {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

void require_upper(cplx tau) {
  if (!(tau.imag() > 0))
    throw PreconditionError("tau must lie in the upper half plane");
}

template <class F> cplx sum_over(const IndexRange &r, F &&term) {
  cplx s = 0;
  for (long n = r.lo; n <= r.hi; ++n)
    s += term(n);
  return s;
}

double sign_of(long n) { return (n & 1) ? -1.0 : 1.0; }

IndexRange span(double a, double b) {
  return {static_cast<long>(std::floor(std::min(a, b))) - 1,
          static_cast<long>(std::ceil(std::max(a, b))) + 1};
}

// 1 - sqrt(pi) t erfcx(t), no cancellation for large t
double one_minus_erfcx_ratio(double t) {
  if (t < 2)
    return 1 - std::sqrt(kPi) * t * erfcx(t);
  double g = t;
  for (int n = 80; n >= 2; --n)
    g = t + 0.5 * n / g;
  const double tail = 0.5 / g;
  return tail / (t + tail);
}

} // namespace

cplx theta_odd(cplx tau, cplx z, const TruncationPolicy &pol) {
  require_upper(tau);
  const double v = tau.imag(), y = z.imag();
  const auto r = gaussian_range(kPi * v, -y / v - 0.5, kPi * y * y / v, pol);
  return sum_over(r, [&](long n) {
    const double nu = double(n) + 0.5;
    return std::exp(kI * kPi * nu * nu * tau + 2.0 * kPi * kI * nu * (z + 0.5));
  });
}

cplx theta_int(ThetaKind kind, cplx tau, cplx z, const TruncationPolicy &pol) {
  require_upper(tau);
  const double off = kind == ThetaKind::theta1 ? 0.5 : 0.0;
  const double v = tau.imag(), y = z.imag();
  const auto r = gaussian_range(kPi * v, -y / v - off, kPi * y * y / v, pol);
  return sum_over(r, [&](long n) {
    const double nu = double(n) + off;
    return std::exp(kI * kPi * nu * nu * tau + 2.0 * kPi * kI * nu * z);
  });
}

cplx theta_ml(int m, int ell, cplx tau, cplx z, const TruncationPolicy &pol) {
  require_upper(tau);
  if (m <= 0)
    throw PreconditionError("theta_ml needs a positive integer index");
  const int l = ((ell % (2 * m)) + 2 * m) % (2 * m);
  const double v = tau.imag(), y = z.imag();
  const auto r = gaussian_range(2 * kPi * v * m, (-2.0 * m * y / v - l) / (2.0 * m),
                                2 * kPi * m * y * y / v, pol);
  return sum_over(r, [&](long n) {
    const double rr = double(l) + 2.0 * m * double(n);
    return std::exp(2.0 * kPi * kI * (rr * rr / (4.0 * m) * tau + rr * z));
  });
}

cplx eta(cplx tau, const TruncationPolicy &pol) {
  require_upper(tau);
  const double v = tau.imag();
  const auto r = gaussian_range(3 * kPi * v, 1.0 / 6, kPi * v / 12, pol);
  const cplx s = sum_over(r, [&](long n) {
    const double e = double(n) * (3.0 * double(n) - 1) / 2;
    return sign_of(n) * std::exp(2.0 * kPi * kI * e * tau);
  });
  return std::exp(kPi * kI * tau / 12.0) * s;
}

cplx eta_product(cplx tau, const TruncationPolicy &pol) {
  require_upper(tau);
  const cplx q = std::exp(2.0 * kPi * kI * tau);
  cplx p = 1, qn = q;
  for (long n = 1; std::abs(qn) > pol.abs_tol * 1e-3; ++n) {
    if (n > pol.max_terms)
      throw TruncationError("eta product needs more than max_terms factors");
    p *= 1.0 - qn;
    qn *= q;
  }
  return std::exp(kPi * kI * tau / 12.0) * p;
}

double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

double beta_fn(double x) {
  if (x < 0)
    throw PreconditionError("beta needs x >= 0");
  return std::erfc(std::sqrt(kPi * x));
}

double beta_quadrature(double x, const TruncationPolicy &pol) {
  if (x < 0)
    throw PreconditionError("beta needs x >= 0");
  // u = t^2 removes the endpoint singularity
  const double a = std::sqrt(x);
  return 2 * integrate([](double t) { return std::exp(-kPi * t * t); }, a, a + 7.0,
                       pol.abs_tol, 0.5);
}

double E_fn(double z) { return sgn(z) * (1 - beta_fn(z * z)); }

cplx zwegers_R(cplx tau, cplx z, const TruncationPolicy &pol) {
  require_upper(tau);
  const double v = tau.imag(), y = z.imag();
  auto r = gaussian_range(kPi * v, -y / v - 0.5, -kPi * y * y / v, pol);
  r = hull(r, span(-0.5, -y / v - 0.5));
  const double rt = std::sqrt(2 * v);
  return sum_over(r, [&](long n) {
    const double nu = double(n) + 0.5;
    const double x = (nu + y / v) * rt;
    const double t = std::sqrt(kPi) * std::abs(x);
    const double s = sgn(nu);
    const cplx E = -kPi * kI * nu * nu * tau - 2.0 * kPi * kI * nu * z;
    cplx term;
    if (x == 0)
      term = s * std::exp(E);
    else if (sgn(x) == s)
      term = s * erfcx(t) * std::exp(E - t * t);
    else
      term = s * (2 - std::erfc(t)) * std::exp(E);
    return sign_of(n) * term;
  });
}

cplx mordell_h(cplx tau, cplx z, const TruncationPolicy &pol) {
  require_upper(tau);
  const double u = tau.real(), v = tau.imag(), x = z.real(), y = z.imag();
  // integrate along Im x = c through (roughly) the saddle -i z/tau; an integral
  // c keeps the line half a unit away from the poles of 1/cosh
  const double c = std::round(-(x * u + y * v) / std::norm(tau));
  cplx res = 0;
  // poles i(n+1/2) between the real axis and the line
  for (double nu = 0.5; nu < std::abs(c); nu += 1) {
    const double s = c > 0 ? nu : -nu;
    // 2 pi i Res_{x = i s} = 2 e^{-pi i tau s^2 - 2 pi i z s} / sin(pi s)
    const double sin_s = (static_cast<long>(nu - 0.5) % 2 == 0 ? 1.0 : -1.0) * (s > 0 ? 1 : -1);
    const cplx e = std::exp(-kPi * kI * tau * s * s - 2.0 * kPi * kI * z * s);
    res += (c > 0 ? 2.0 : -2.0) * e / sin_s;
  }
  // log envelope on the line: |cosh(pi(t + i c))| = cosh(pi t) for integral c
  const double beta = 2 * kPi * (u * c + x);
  const double base = kPi * v * c * c + 2 * kPi * y * c + std::log(2.0);
  auto env = [&](double t) { return base - kPi * v * t * t - beta * t - kPi * std::abs(t); };
  double tp = 0;
  for (double cand : {-(beta + kPi) / (2 * kPi * v), -(beta - kPi) / (2 * kPi * v)})
    if (env(cand) > env(tp))
      tp = cand;
  const double peak = env(tp);
  // the envelope peak tracks |h| on this line, so the tolerance is relative
  const double tol = pol.abs_tol * std::exp(peak);
  const double target = std::log(tol / 8);
  // concave envelope: the tail beyond t is at most e^{env(t)} / |env'(t)|
  auto edge = [&](double dir) {
    double t = tp + dir;
    while (true) {
      const double d = dir * (2 * kPi * v * t + beta + kPi * (t > 0 ? 1 : -1));
      if (d > 0 && env(t) - std::log(d) < target)
        return t;
      t += dir * 0.5;
      if (std::abs(t - tp) > pol.max_interval)
        throw QuadratureError("mordell integral cutoff beyond max_interval");
    }
  };
  const double lo = edge(-1), hi = edge(1);
  auto f = [&](double t) {
    const cplx xx(t, c);
    const double at = std::abs(t);
    // 1/cosh(pi x) = 2 e^{-pi |t|} e^{-+ i pi c} / (1 + e^{-2 pi x sgn t})
    const cplx den = t >= 0 ? 1.0 + std::exp(-2.0 * kPi * xx) : 1.0 + std::exp(2.0 * kPi * xx);
    const cplx ph = t >= 0 ? std::exp(-kI * kPi * c) : std::exp(kI * kPi * c);
    return std::exp(kI * kPi * tau * xx * xx - 2.0 * kPi * xx * z - kPi * at) * 2.0 * ph / den;
  };
  return integrate(f, lo, hi, tol, 0.5) + res;
}

cplx g_ab(double a, double b, cplx tau, const TruncationPolicy &pol) {
  require_upper(tau);
  const double v = tau.imag();
  const auto r = gaussian_range(kPi * v, -a, std::log(1 + std::abs(a)), pol);
  return sum_over(r, [&](long n) {
    const double nu = double(n) + a;
    return nu * std::exp(kI * kPi * nu * nu * tau + 2.0 * kPi * kI * nu * b);
  });
}

cplx R_ab(double a, double b, cplx tau, const TruncationPolicy &pol,
          double cutoff_scale) {
  require_upper(tau);
  const double v = tau.imag();
  const double fr = a - std::floor(a);
  // g_{1/2,b} vanishes identically for integral b
  if (fr == 0.5 && b == std::round(b))
    return 0.0;
  const double nu0 = fr == 0 ? 1.0 : std::min(fr, 1 - fr);
  const double C = 4 * (1 + nu0) * (1 + 1 / (1 - std::exp(-kPi * v * (2 * nu0 + 1))));
  const double rate = kPi * nu0 * nu0;
  double T = 1;
  while (C * std::exp(-rate * (v + T)) / (rate * std::sqrt(2 * v + T)) >= pol.abs_tol / 4) {
    T *= 1.25;
    if (T > 1e4)
      throw QuadratureError("ray integral cutoff too large");
  }
  T *= cutoff_scale;
  const cplx base = -std::conj(tau);
  auto f = [&](double t) {
    return g_ab(a, -b, base + kI * t, pol) / std::sqrt(2 * v + t);
  };
  // panels grow geometrically; the integrand decays like e^{-rate t}
  cplx s = 0;
  double lo = 0, w = 0.5;
  while (lo < T) {
    const double hi = std::min(T, lo + w);
    s += integrate(f, lo, hi, pol.abs_tol / 8, hi - lo);
    lo = hi;
    w *= 1.5;
  }
  return s;
}

cplx R_ab_series(double a, double b, cplx tau, const TruncationPolicy &pol) {
  require_upper(tau);
  const double v = tau.imag();
  const auto r = gaussian_range(kPi * v, -a, 0.0, pol);
  const double rt = std::sqrt(2 * kPi * v);
  return sum_over(r, [&](long n) {
    const double nu = double(n) + a;
    if (nu == 0)
      return cplx(0);
    return sgn(nu) * erfcx(rt * std::abs(nu)) *
           std::exp(-kPi * kI * nu * nu * std::conj(tau) - 2.0 * kPi * kI * nu * b);
  });
}

namespace {

// sum_n sign^n e^{pi i (n^2 + shift n) tau + 2 pi i n z} / (1 - e^{2 pi i n tau + 2 pi i w})
cplx denominated_sum(cplx tau, cplx z, cplx w, double shift, bool alternate,
                     const TruncationPolicy &pol) {
  const double v = tau.imag(), yz = z.imag(), yw = w.imag();
  const double c0 = -yz / v - shift / 2;
  const double ls = kPi * v * (c0 * c0) + 2 * kPi * std::abs(yw) + kPi * v + std::log(4.0);
  auto r = hull(gaussian_range(kPi * v, c0, ls, pol), gaussian_range(kPi * v, c0 + 1, ls, pol));
  r = hull(r, span(-yw / v, -yw / v));
  return sum_over(r, [&](long n) {
    const double dn = double(n);
    const cplx den = 1.0 - std::exp(2.0 * kPi * kI * (dn * tau + w));
    if (std::abs(den) < pole_eps)
      throw PoleProximityError("denominator vanishes at n = " + std::to_string(n));
    const cplx num = std::exp(kPi * kI * (dn * dn + shift * dn) * tau + 2.0 * kPi * kI * dn * z);
    return (alternate ? sign_of(n) : 1.0) * num / den;
  });
}

} // namespace

cplx lerch_mu(cplx tau, cplx z, cplx w, const TruncationPolicy &pol) {
  require_upper(tau);
  const cplx th = theta_odd(tau, z, pol);
  if (std::abs(th) < pole_eps)
    throw PoleProximityError("theta(tau, z) vanishes");
  return std::exp(kPi * kI * w) / th * denominated_sum(tau, z, w, 1.0, true, pol);
}

cplx lerch_fab(double a, double b, cplx tau, cplx z, const TruncationPolicy &pol) {
  return std::exp(2.0 * kPi * kI * a * z - kPi * kI * a * a * tau) *
         lerch_mu(tau, z, a * tau + b, pol);
}

cplx appell_K1(cplx tau, cplx z, cplx w, const TruncationPolicy &pol) {
  require_upper(tau);
  return denominated_sum(tau, z, z + w, 0.0, false, pol);
}

cplx appell_G(cplx tau, cplx z, cplx w, const TruncationPolicy &pol) {
  const cplx th = theta0(tau, z, pol);
  if (std::abs(th) < pole_eps)
    throw PoleProximityError("theta0(tau, z) vanishes");
  return appell_K1(tau, z, w, pol) / th;
}

namespace {

double gaussian_cutoff(double slope, double extra, const TruncationPolicy &pol) {
  // e^{-pi X^2 + 2 pi slope X + extra} / (2 pi X - 2 pi slope) < tol / 8
  double X = std::max(1.0, 2 * slope);
  while (true) {
    const double d = 2 * kPi * (X - slope);
    if (d > 0 && std::exp(-kPi * X * X + 2 * kPi * slope * X + extra) / d < pol.abs_tol / 8)
      return X;
    X += 0.25;
    if (X > pol.max_interval)
      throw QuadratureError("integral cutoff beyond max_interval");
  }
}

} // namespace

cplx appell_Phi(cplx tau, cplx w, const TruncationPolicy &pol) {
  require_upper(tau);
  const cplx s = std::sqrt(-kI * tau);
  const cplx ws = w / s;
  const double X = gaussian_cutoff(std::abs(ws.imag()), std::log(4.0), pol);
  auto f = [&](double x) {
    const cplx a = 2.0 * kPi * x * ws;
    // coth via e^{-2y}: std::tanh gives inf/inf for large arguments
    const cplx e = std::exp(-2.0 * kPi * x * s);
    return std::exp(-kPi * x * x) * (std::cos(a) - kI * std::sin(a) * (1.0 + e) / (1.0 - e));
  };
  return -(integrate(f, 0.0, X, pol.abs_tol / 2, 0.5) + kI / (2.0 * s));
}

cplx appell_Phi_shifted(cplx tau, cplx w, const TruncationPolicy &pol) {
  require_upper(tau);
  const cplx s = std::sqrt(-kI * tau);
  const cplx ws = w / s;
  const double delta = 0.25 / std::abs(s);
  const double extra = kPi * delta * delta + 2 * kPi * delta * std::abs(ws) + std::log(4.0);
  const double X = gaussian_cutoff(std::abs(ws.imag()) + std::abs(s), extra, pol);
  auto f = [&](double x) {
    const cplx xc(x, -delta);
    return std::exp(-kPi * xc * xc - 2.0 * kPi * kI * xc * ws) /
           (1.0 - std::exp(-2.0 * kPi * xc * s));
  };
  return -integrate(f, -X, X, pol.abs_tol / 2, 0.5);
}

cplx alpha(int variant, double a, double b, cplx tau, const TruncationPolicy &pol) {
  require_upper(tau);
  if (variant != 0 && variant != 1)
    throw PreconditionError("alpha variant must be 0 or 1");
  const double off = variant == 1 ? 0.5 : 0.0;
  const double v = tau.imag();
  const auto r = gaussian_range(2 * kPi * v, -a / 2 - off,
                                kPi * v * a * a / 2 + std::log(1 + std::abs(a)), pol);
  return sum_over(r, [&](long k) {
    const double n = double(k) + off;
    return (n + a / 2) *
           std::exp(2.0 * kPi * kI * n * n * tau + 2.0 * kPi * kI * n * (a * tau + b));
  });
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0)
    return std::abs(a) == 1 ? 1 : 0;
  int s = 1;
  if (n < 0) {
    n = -n;
    if (a < 0)
      s = -s;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0)
      return 0;
    const std::int64_t a8 = ((a % 8) + 8) % 8;
    if ((v & 1) && (a8 == 3 || a8 == 5))
      s = -s;
  }
  a = ((a % n) + n) % n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5)
        s = -s;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3)
      s = -s;
    a %= n;
  }
  return n == 1 ? s : 0;
}

Rational hurwitz_H(std::int64_t n) {
  if (n < 0)
    return 0;
  if (n == 0)
    return Rational(-1, 12);
  if (n % 4 == 1 || n % 4 == 2)
    return 0;
  auto is_disc = [](std::int64_t d) { return ((d % 4) + 4) % 4 <= 1; };
  std::int64_t f = 1;
  for (std::int64_t g = 1; g * g <= n; ++g)
    if (n % (g * g) == 0 && is_disc(-(n / (g * g))))
      f = g;
  const std::int64_t D0 = -(n / (f * f));
  std::int64_t acc = 0;
  for (std::int64_t a = 1; a <= -D0; ++a)
    acc += kronecker(D0, a) * a;
  const Rational hw(-acc, -D0);
  // sum_{d | f} mu(d) chi(d) sigma(f / d)
  auto mobius = [](std::int64_t d) {
    int m = 1;
    for (std::int64_t p = 2; p * p <= d; ++p)
      if (d % p == 0) {
        d /= p;
        if (d % p == 0)
          return 0;
        m = -m;
      }
    return d > 1 ? -m : m;
  };
  auto sigma = [](std::int64_t e) {
    std::int64_t s = 0;
    for (std::int64_t d = 1; d <= e; ++d)
      if (e % d == 0)
        s += d;
    return s;
  };
  std::int64_t tot = 0;
  for (std::int64_t d = 1; d <= f; ++d)
    if (f % d == 0)
      tot += mobius(d) * kronecker(D0, d) * sigma(f / d);
  return hw * tot;
}

double zagier_beta(double x) {
  if (x < 0)
    throw PreconditionError("beta needs x >= 0");
  if (x == 0)
    return 1 / (8 * kPi);
  return std::exp(-x) / (8 * kPi) * one_minus_erfcx_ratio(std::sqrt(x));
}

cplx QSeriesBi::evaluate(cplx tau, cplx z) const {
  cplx s = 0;
  for (const auto &[key, c] : coeffs) {
    const double n = boost::rational_cast<double>(key.first);
    s += boost::rational_cast<double>(c) *
         std::exp(2.0 * kPi * kI * (n * tau + double(key.second) * z));
  }
  return s;
}

QSeriesBi hstar_series(int N, int r_max) {
  QSeriesBi out;
  out.order = N;
  for (int D = 0; D <= 4 * N; ++D) {
    if (D % 4 == 1 || D % 4 == 2)
      continue;
    const Rational h = hurwitz_H(D);
    for (int r = -r_max; r <= r_max; ++r)
      if (((r - D) % 2 + 2) % 2 == 0)
        out.coeffs[{Rational(D + r * r, 4), r}] += h;
  }
  return out;
}

namespace {

IndexRange r_window(cplx tau, cplx z, const TruncationPolicy &pol) {
  const double v = tau.imag(), y = z.imag();
  return gaussian_range(kPi * v / 2, -2 * y / v, 2 * kPi * y * y / v, pol);
}

void check_order(cplx tau, cplx z, int N, const TruncationPolicy &pol) {
  if (N < 0)
    throw PreconditionError("order must be non-negative");
  const double v = tau.imag(), y = z.imag();
  const double lt = 2 * kPi * y * y / v - kPi * v * (4.0 * N + 3) / 2 +
                    std::log(8.0 * (4.0 * N + 8) * (1 + 2 / std::sqrt(v)) /
                             (1 - std::exp(-kPi * v / 2)));
  if (lt > std::log(pol.abs_tol))
    throw TruncationError("tail at order " + std::to_string(N) + " above abs_tol");
}

} // namespace

cplx hstar(cplx tau, cplx z, int N, const TruncationPolicy &pol) {
  require_upper(tau);
  check_order(tau, z, N, pol);
  const auto rr = r_window(tau, z, pol);
  cplx s = 0;
  for (int D = 0; D <= 4 * N; ++D) {
    if (D % 4 == 1 || D % 4 == 2)
      continue;
    const double h = boost::rational_cast<double>(hurwitz_H(D));
    for (long r = rr.lo; r <= rr.hi; ++r)
      if (((r - D) % 2 + 2) % 2 == 0)
        s += h * std::exp(2.0 * kPi * kI * ((double(D) + double(r * r)) / 4 * tau + double(r) * z));
  }
  return s;
}

cplx e21_nonholomorphic(cplx tau, cplx z, int N, const TruncationPolicy &pol) {
  require_upper(tau);
  const double v = tau.imag();
  const auto rr = r_window(tau, z, pol);
  cplx s = 0;
  for (long r = rr.lo; r <= rr.hi; ++r) {
    const long fmax = static_cast<long>(std::floor(std::sqrt(double(r * r + 4L * N)) + 1e-9));
    for (long f = -fmax; f <= fmax; ++f) {
      if (((f - r) % 2 + 2) % 2 != 0 || f * f > r * r + 4L * N)
        continue;
      const double bz = zagier_beta(kPi * double(f * f) * v);
      s += bz * std::exp(2.0 * kPi * kI * (double(r * r - f * f) / 4 * tau + double(r) * z));
    }
  }
  return 2 / std::sqrt(v) * s;
}

cplx e21_star(cplx tau, cplx z, int N, const TruncationPolicy &pol) {
  require_upper(tau);
  if (tau.imag() < 0.5)
    throw PreconditionError("E*_{2,1} is evaluated only for Im tau >= 0.5");
  return -12.0 * (hstar(tau, z, N, pol) + e21_nonholomorphic(tau, z, N, pol));
}

} // namespace jpr
