#pragma once

#include <complex>
#include <random>

#include "jpr/group.hpp"

namespace testutil {

using jpr::cplx;

inline jpr::GroupElement random_word(std::mt19937_64 &rng, int len, int j = 1) {
  std::uniform_int_distribution<int> pick(0, 3), sgn(0, 1), coord(0, j - 1);
  jpr::GroupElement g = jpr::identity(j);
  for (int i = 0; i < len; ++i) {
    const auto gen = static_cast<jpr::Gen>(pick(rng));
    jpr::GroupElement x = jpr::generator(gen, j, gen == jpr::Gen::G0 ? 0 : coord(rng));
    g = g * (sgn(rng) ? x : jpr::inverse(x));
  }
  return g;
}

inline jpr::JacobiPoint random_point(std::mt19937_64 &rng, int j = 1, double vlo = 0.5,
                                     double vhi = 2.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), v(vlo, vhi), s(-0.5, 0.5);
  jpr::JacobiPoint p;
  p.tau = cplx(u(rng), v(rng));
  p.z.resize(j);
  for (int n = 0; n < j; ++n)
    p.z(n) = cplx(s(rng), s(rng));
  return p;
}

} // namespace testutil
