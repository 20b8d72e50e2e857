#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace jpr {

using Int = std::int64_t;
using Mat2i = Eigen::Matrix<Int, 2, 2>;
// rows are (lambda, mu), one column per coordinate of z
using Lattice = Eigen::Matrix<Int, 2, Eigen::Dynamic, 0, 2, 2>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1, 0, 2, 1>;

// entries are kept strictly below this bound in magnitude
inline constexpr Int kEntryBound = Int(1) << 31;

struct GroupElement {
  Mat2i mat = Mat2i::Identity();
  Lattice lat = Lattice::Zero(2, 1);

  int dim() const { return static_cast<int>(lat.cols()); }
  Int a() const { return mat(0, 0); }
  Int b() const { return mat(0, 1); }
  Int c() const { return mat(1, 0); }
  Int d() const { return mat(1, 1); }
  IntVec lam() const { return lat.row(0).transpose(); }
  IntVec mu() const { return lat.row(1).transpose(); }

  bool operator==(const GroupElement &o) const {
    return mat == o.mat && lat.cols() == o.lat.cols() && lat == o.lat;
  }
  bool operator<(const GroupElement &o) const;
};

GroupElement make_element(const Mat2i &mat, const IntVec &lam,
                          const IntVec &mu);
GroupElement make_element(Int a, Int b, Int c, Int d, Int lam = 0,
                          Int mu = 0);
GroupElement identity(int j = 1);

GroupElement compose(const GroupElement &g1, const GroupElement &g2);
GroupElement inverse(const GroupElement &g);
GroupElement power(const GroupElement &g, Int e);
inline GroupElement operator*(const GroupElement &g1, const GroupElement &g2) {
  return compose(g1, g2);
}

Int mu_norm(const GroupElement &g);
bool is_parabolic(const GroupElement &g);
std::string to_string(const GroupElement &g);

// named elements; lattice generators act on coordinate `coord`
namespace el {
GroupElement S(int j = 1);
GroupElement T(int j = 1);
GroupElement minusI(int j = 1);
GroupElement G0(int j = 1);
GroupElement G1(int j = 1, int coord = 0);
GroupElement G2(int j = 1, int coord = 0);
GroupElement G3(int j = 1, int coord = 0);
GroupElement G4(int j = 1, int coord = 0);
GroupElement V(int j = 1);
GroupElement R(int j = 1);
GroupElement translation(const IntVec &lam, const IntVec &mu);
} // namespace el

enum class Gen { G0, G2, G3, G4 };

struct Token {
  Gen gen;
  int coord = 0;
  Int exp = 1;
  bool operator==(const Token &) const = default;
};

struct Word {
  int j = 1;
  std::vector<Token> tokens;
};

GroupElement generator(Gen gen, int j, int coord = 0);
std::string token_name(const Token &t);
std::string to_string(const Word &w);

Word factor_word(const GroupElement &g);
GroupElement recompose(const Word &w);

template <class Scalar> struct BasicPoint {
  using Complex = std::complex<Scalar>;
  using ZVec = Eigen::Matrix<Complex, Eigen::Dynamic, 1, 0, 2, 1>;
  Complex tau;
  ZVec z;
  int dim() const { return static_cast<int>(z.size()); }
};

using JacobiPoint = BasicPoint<double>;
using cplx = std::complex<double>;

JacobiPoint make_point(cplx tau, cplx z);
JacobiPoint make_point(cplx tau, cplx z, cplx w);

template <class Scalar>
BasicPoint<Scalar> act(const GroupElement &g, const BasicPoint<Scalar> &p) {
  using C = std::complex<Scalar>;
  const C a(Scalar(g.a())), b(Scalar(g.b())), c(Scalar(g.c())), d(Scalar(g.d()));
  const C den = c * p.tau + d;
  BasicPoint<Scalar> out;
  out.tau = (a * p.tau + b) / den;
  out.z.resize(p.z.size());
  for (Eigen::Index n = 0; n < p.z.size(); ++n)
    out.z(n) = (p.z(n) + Scalar(g.lat(0, n)) * p.tau + Scalar(g.lat(1, n))) / den;
  return out;
}

} // namespace jpr
