#include "doctest.h"

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "jpr/error.hpp"
#include "jpr/group.hpp"

using namespace jpr;

namespace {

GroupElement lat(Int l, Int m) { return make_element(1, 0, 0, 1, l, m); }
GroupElement neg(Int l, Int m) { return make_element(-1, 0, 0, -1, l, m); }

} // namespace

TEST_CASE("make_element") {
  CHECK(make_element(1, 0, 0, 1) == identity());
  CHECK(make_element(1, 1, 0, 1) == el::G0());
  CHECK_THROWS_AS(make_element(1, 0, 0, 0), DeterminantError);
  CHECK_THROWS_AS(make_element(Mat2i::Identity(), IntVec::Zero(1), IntVec::Zero(2)),
                  DimensionError);
  CHECK_THROWS_AS(make_element(1, kEntryBound, 0, 1), OverflowError);
}

TEST_CASE("named generators") {
  CHECK(el::G2() == make_element(0, -1, 1, 0, 1, 0));
  CHECK(el::G3() == lat(1, 0));
  CHECK(el::G4() == lat(0, 1));
  CHECK(el::G1() == make_element(1, 1, 0, 1, 1, 0));
  // V = [-TS,(1,-1)], R = [-TS,(0,-1)]
  CHECK(el::V() == make_element(0, 1, -1, -1, 1, -1));
  CHECK(el::R() == make_element(0, 1, -1, -1, 0, -1));
}

TEST_CASE("defining relations") {
  for (int j : {1, 2}) {
    const GroupElement I = identity(j);
    CHECK(power(el::G2(j), 4) == I);
    CHECK(power(el::V(j), 3) == I);
    CHECK(power(el::R(j), 3) == I);
    CHECK(power(el::G2(j) * el::G2(j) * el::G2(j) * el::G0(j), 3) == I);
  }
  const auto V = el::V(), G22 = power(el::G2(), 2);
  const auto lhs = V * G22;
  CHECK(lhs == lat(-1, -2) * G22 * V);
  CHECK(lhs == G22 * lat(1, 2) * V);
  CHECK(lhs == G22 * V * lat(-2, -1));
}

TEST_CASE("remark identities that hold") {
  const auto G0 = el::G0(), G2 = el::G2();
  const auto G0i = inverse(G0), G2m2 = power(G2, -2);
  CHECK(lat(0, -1) == G0i * G2m2 * G0 * power(G2, 2));
  CHECK(el::S().mat == G0.mat);
  CHECK(make_element(0, -1, 1, 0) == neg(1, 0) * power(G2, 3));
  CHECK(neg(1, 0) == G0i * G2m2 * G0);
  // the remaining listed identity [I,(0,-1)] = G0^-1 G2^-2 G0 contradicts the
  // one above; the product is [-I,(1,0)]
  CHECK_FALSE(lat(0, -1) == G0i * G2m2 * G0);
}

TEST_CASE("compose and inverse") {
  std::mt19937_64 rng(7);
  CHECK(inverse(identity()) == identity());
  CHECK(inverse(el::G3()) == lat(-1, 0));
  for (int i = 0; i < 100; ++i) {
    const int j = 1 + i % 2;
    const auto g = testutil::random_word(rng, 1 + i % 8, j);
    CHECK(identity(j) * g == g);
    CHECK(g * identity(j) == g);
    CHECK(g * inverse(g) == identity(j));
    CHECK(inverse(g) * g == identity(j));
  }
  CHECK_THROWS_AS(compose(identity(1), identity(2)), DimensionError);
}

TEST_CASE("group law matches the action") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const int j = 1 + i % 2;
    const auto g1 = testutil::random_word(rng, 4, j);
    const auto g2 = testutil::random_word(rng, 4, j);
    const auto p = testutil::random_point(rng, j);
    const auto a = act(g1 * g2, p);
    const auto b = act(g1, act(g2, p));
    const double scale = 1 + std::abs(a.tau) + a.z.norm();
    CHECK(std::abs(a.tau - b.tau) < 1e-14 * scale * 10);
    CHECK((a.z - b.z).norm() < 1e-14 * scale * 10);
    CHECK(a.tau.imag() > 0);
  }
}

TEST_CASE("act examples") {
  const auto p = make_point(cplx(0, 1), 0.3);
  const auto q = act(identity(), p);
  CHECK(q.tau == p.tau);
  CHECK(q.z(0) == p.z(0));
  const auto r = act(el::T(), p);
  CHECK(std::abs(r.tau - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(r.z(0) - cplx(0, -0.3)) < 1e-15);
}

TEST_CASE("factor_word") {
  const Word w = factor_word(el::G0());
  REQUIRE(w.tokens.size() == 1);
  CHECK(w.tokens[0] == Token{Gen::G0, 0, 1});
  CHECK(recompose(factor_word(el::T())) == el::T());
  CHECK(recompose(factor_word(lat(3, 2))) == lat(3, 2));
  CHECK(recompose(factor_word(identity())) == identity());
  CHECK(recompose(factor_word(el::minusI())) == el::minusI());

  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const int j = 1 + i % 2;
    const auto g = testutil::random_word(rng, 1 + i % 12, j);
    const Word wg = factor_word(g);
    CHECK(recompose(wg) == g);
    // length grows at most logarithmically in mu(A)
    const double bound = 8 * std::log2(double(mu_norm(g))) + 12;
    CHECK(double(wg.tokens.size()) <= bound);
  }
  // consecutive Fibonacci numbers: the slowest continued fraction
  const auto fib = make_element(165580141, 102334155, 102334155, 63245986, 5, -7);
  const Word wf = factor_word(fib);
  CHECK(recompose(wf) == fib);
  CHECK(double(wf.tokens.size()) <= 8 * std::log2(double(mu_norm(fib))) + 12);
}

TEST_CASE("mu_norm and parabolic") {
  CHECK(mu_norm(identity()) == 2);
  CHECK(mu_norm(el::G0()) == 3);
  CHECK(mu_norm(make_element(2, 1, 1, 1)) == 7);
  CHECK(is_parabolic(make_element(1, 1, 0, 1, 0, 5)));
  CHECK_FALSE(is_parabolic(el::T()));
  CHECK_FALSE(is_parabolic(make_element(1, 1, 0, 1, 1, 0)));
}
