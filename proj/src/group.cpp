#include "jpr/group.hpp"

#include <cstdlib>
#include <sstream>
#include <tuple>

#include "jpr/error.hpp"

namespace jpr {

namespace {

void check_bounds(const GroupElement &g) {
  auto ok = [](Int x) { return x < kEntryBound && x > -kEntryBound; };
  for (Int x : g.mat.reshaped())
    if (!ok(x))
      throw OverflowError("matrix entry exceeds 2^31");
  for (Int x : g.lat.reshaped())
    if (!ok(x))
      throw OverflowError("lattice entry exceeds 2^31");
}

void check_dim(const GroupElement &g1, const GroupElement &g2) {
  if (g1.dim() != g2.dim())
    throw DimensionError("group elements of different dimension");
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

// nearest integer to a/c
Int round_div(Int a, Int c) { return floor_div(2 * a + c, 2 * c); }

} // namespace

bool GroupElement::operator<(const GroupElement &o) const {
  if (dim() != o.dim())
    return dim() < o.dim();
  for (int i = 0; i < 4; ++i)
    if (mat.reshaped()(i) != o.mat.reshaped()(i))
      return mat.reshaped()(i) < o.mat.reshaped()(i);
  for (Eigen::Index i = 0; i < lat.size(); ++i)
    if (lat.reshaped()(i) != o.lat.reshaped()(i))
      return lat.reshaped()(i) < o.lat.reshaped()(i);
  return false;
}

GroupElement make_element(const Mat2i &mat, const IntVec &lam,
                          const IntVec &mu) {
  if (lam.size() != mu.size())
    throw DimensionError("lambda and mu have different lengths");
  if (lam.size() < 1 || lam.size() > 2)
    throw DimensionError("only j = 1 or j = 2 is supported");
  GroupElement g;
  g.mat = mat;
  g.lat.resize(2, lam.size());
  g.lat.row(0) = lam.transpose();
  g.lat.row(1) = mu.transpose();
  check_bounds(g);
  if (mat(0, 0) * mat(1, 1) - mat(0, 1) * mat(1, 0) != 1)
    throw DeterminantError("ad - bc != 1 for " + to_string(g));
  return g;
}

GroupElement make_element(Int a, Int b, Int c, Int d, Int lam, Int mu) {
  Mat2i m;
  m << a, b, c, d;
  return make_element(m, IntVec::Constant(1, lam), IntVec::Constant(1, mu));
}

GroupElement identity(int j) {
  GroupElement g;
  g.lat = Lattice::Zero(2, j);
  return g;
}

GroupElement compose(const GroupElement &g1, const GroupElement &g2) {
  check_dim(g1, g2);
  GroupElement r;
  r.mat = g1.mat * g2.mat;
  r.lat = g2.mat.transpose() * g1.lat + g2.lat;
  check_bounds(r);
  return r;
}

GroupElement inverse(const GroupElement &g) {
  GroupElement r;
  r.mat << g.d(), -g.b(), -g.c(), g.a();
  r.lat = -(r.mat.transpose() * g.lat);
  return r;
}

GroupElement power(const GroupElement &g, Int e) {
  GroupElement base = e < 0 ? inverse(g) : g;
  Int n = e < 0 ? -e : e;
  GroupElement r = identity(g.dim());
  while (n > 0) {
    if (n & 1)
      r = compose(r, base);
    n >>= 1;
    if (n > 0)
      base = compose(base, base);
  }
  return r;
}

Int mu_norm(const GroupElement &g) { return g.mat.squaredNorm(); }

bool is_parabolic(const GroupElement &g) {
  return g.a() == 1 && g.c() == 0 && g.d() == 1 && g.lat.row(0).isZero();
}

std::string to_string(const GroupElement &g) {
  std::ostringstream os;
  os << "[(" << g.a() << "," << g.b() << ";" << g.c() << "," << g.d() << "),(";
  auto vec = [&](int row) {
    if (g.dim() == 1) {
      os << g.lat(row, 0);
    } else {
      os << "(";
      for (int n = 0; n < g.dim(); ++n)
        os << (n ? "," : "") << g.lat(row, n);
      os << ")";
    }
  };
  vec(0);
  os << ",";
  vec(1);
  os << ")]";
  return os.str();
}

namespace el {

GroupElement S(int j) {
  GroupElement g = identity(j);
  g.mat << 1, 1, 0, 1;
  return g;
}

GroupElement T(int j) {
  GroupElement g = identity(j);
  g.mat << 0, -1, 1, 0;
  return g;
}

GroupElement minusI(int j) {
  GroupElement g = identity(j);
  g.mat = -Mat2i::Identity();
  return g;
}

GroupElement G0(int j) { return S(j); }

GroupElement G1(int j, int coord) {
  GroupElement g = S(j);
  g.lat(0, coord) = 1;
  return g;
}

GroupElement G2(int j, int coord) {
  GroupElement g = T(j);
  g.lat(0, coord) = 1;
  return g;
}

GroupElement G3(int j, int coord) {
  GroupElement g = identity(j);
  g.lat(0, coord) = 1;
  return g;
}

GroupElement G4(int j, int coord) {
  GroupElement g = identity(j);
  g.lat(1, coord) = 1;
  return g;
}

GroupElement V(int j) { return power(G2(j), 3) * G1(j); }
GroupElement R(int j) { return power(G2(j), 3) * G0(j); }

GroupElement translation(const IntVec &lam, const IntVec &mu) {
  return make_element(Mat2i::Identity(), lam, mu);
}

} // namespace el

GroupElement generator(Gen gen, int j, int coord) {
  switch (gen) {
  case Gen::G0:
    return el::G0(j);
  case Gen::G2:
    return el::G2(j, coord);
  case Gen::G3:
    return el::G3(j, coord);
  case Gen::G4:
    return el::G4(j, coord);
  }
  return identity(j);
}

std::string token_name(const Token &t) {
  static const char *names[] = {"G0", "G2", "G3", "G4"};
  std::string s = names[static_cast<int>(t.gen)];
  if (t.gen == Gen::G3 || t.gen == Gen::G4)
    if (t.coord != 0)
      s += "[" + std::to_string(t.coord) + "]";
  return s;
}

std::string to_string(const Word &w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.tokens.size(); ++i) {
    if (i)
      os << " ";
    os << token_name(w.tokens[i]);
    if (w.tokens[i].exp != 1)
      os << "^" << w.tokens[i].exp;
  }
  return os.str();
}

namespace {

void push(std::vector<Token> &out, Token t) {
  if (t.exp == 0)
    return;
  if (!out.empty() && out.back().gen == t.gen && out.back().coord == t.coord) {
    out.back().exp += t.exp;
    if (out.back().exp == 0)
      out.pop_back();
    return;
  }
  out.push_back(t);
}

// [T,0] = G2 G3^{-1}
void push_T(std::vector<Token> &out) {
  push(out, {Gen::G2, 0, 1});
  push(out, {Gen::G3, 0, -1});
}

} // namespace

Word factor_word(const GroupElement &g) {
  const int j = g.dim();
  Word w;
  w.j = j;

  // g = [I, L'][A, 0] with L' = (A^t)^{-1} L
  Mat2i atinv;
  atinv << g.d(), -g.c(), -g.b(), g.a();
  const Lattice lp = atinv * g.lat;
  for (int n = 0; n < j; ++n) {
    push(w.tokens, {Gen::G3, n, lp(0, n)});
    push(w.tokens, {Gen::G4, n, lp(1, n)});
  }

  // A = S^{n1} T S^{n2} T ... (+-I) S^b
  Int a = g.a(), b = g.b(), c = g.c(), d = g.d();
  while (c != 0) {
    const Int n = round_div(a, c);
    a -= n * c;
    b -= n * d;
    push(w.tokens, {Gen::G0, 0, n});
    push_T(w.tokens);
    // T^{-1} (a,b;c,d) = (c,d;-a,-b)
    std::tie(a, b, c, d) = std::make_tuple(c, d, -a, -b);
  }
  if (a == 1) {
    push(w.tokens, {Gen::G0, 0, b});
  } else {
    // -S^{-b} = T^2 S^{-b}
    push_T(w.tokens);
    push_T(w.tokens);
    push(w.tokens, {Gen::G0, 0, -b});
  }
  return w;
}

GroupElement recompose(const Word &w) {
  GroupElement r = identity(w.j);
  for (const Token &t : w.tokens)
    r = compose(r, power(generator(t.gen, w.j, t.coord), t.exp));
  return r;
}

JacobiPoint make_point(cplx tau, cplx z) {
  JacobiPoint p;
  p.tau = tau;
  p.z.resize(1);
  p.z(0) = z;
  return p;
}

JacobiPoint make_point(cplx tau, cplx z, cplx w) {
  JacobiPoint p;
  p.tau = tau;
  p.z.resize(2);
  p.z << z, w;
  return p;
}

} // namespace jpr
