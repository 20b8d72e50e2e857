#include "jpr/period.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include "jpr/error.hpp"
#include "jpr/special.hpp"

namespace jpr {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0, 1);

std::string normalize_key(const std::string &k) { return k == "S" ? "G0" : k; }

// a single factor of the expanded word with its period
struct Unit {
  GroupElement g;
  EvalFunction P;
};

// P_{t^-1}(q) = -omega j(t^-1, q) P_t(t^-1 q)
EvalFunction inverse_period(const EvalFunction &P, const GroupElement &t) {
  EvalFunction s = slash(P, inverse(t));
  EvalFunction out = s;
  out.eval = [s](const JacobiPoint &q) { return -s(q); };
  return out;
}

} // namespace

bool same_context(const AutomorphyContext &a, const AutomorphyContext &b) {
  if (a.k != b.k || a.M.rows() != b.M.rows() || a.M != b.M)
    return false;
  if (a.multiplier.size() != b.multiplier.size())
    return false;
  for (const auto &[k, v] : a.multiplier) {
    auto it = b.multiplier.find(k);
    if (it == b.multiplier.end() || std::abs(it->second - v) > 1e-14)
      return false;
  }
  return true;
}

EvalFunction zero_function(ContextPtr ctx) {
  EvalFunction f;
  f.ctx = std::move(ctx);
  f.name = "0";
  f.eval = [](const JacobiPoint &) { return cplx(0); };
  return f;
}

PeriodSystem::PeriodSystem(std::string name, EvalFunction f,
                           std::map<std::string, EvalFunction> periods)
    : name_(std::move(name)), f_(std::move(f)) {
  if (!f_.ctx)
    throw ContextMismatchError("integral without context");
  for (auto &[k, P] : periods) {
    if (!P.ctx || !same_context(*P.ctx, *f_.ctx))
      throw ContextMismatchError("period " + k + " of " + name_ + " has another context");
    periods_[normalize_key(k)] = P;
  }
  // G2 = [T,(1,0)] = [T,0][I,(1,0)]
  if (!periods_.count("G2") && periods_.count("T") && periods_.count("G3")) {
    const int j = f_.ctx->dim();
    EvalFunction a = slash(periods_.at("T"), el::G3(j));
    EvalFunction b = periods_.at("G3");
    EvalFunction g2 = b;
    g2.name = "P_G2";
    g2.eval = [a, b](const JacobiPoint &p) { return a(p) + b(p); };
    periods_["G2"] = g2;
  }
}

const EvalFunction &PeriodSystem::generator_period(const std::string &key) const {
  auto it = periods_.find(key);
  if (it == periods_.end())
    throw MissingGeneratorError("system " + name_ + " has no period for " + key);
  return it->second;
}

EvalFunction PeriodSystem::period(const GroupElement &g) const {
  {
    std::lock_guard<std::mutex> lock(mtx_);
    auto it = cache_.find(g);
    if (it != cache_.end())
      return it->second;
  }
  const int j = f_.ctx->dim();
  if (g.dim() != j)
    throw DimensionError("element dimension differs from the system");
  const Word w = factor_word(g);
  std::vector<Unit> units;
  for (const Token &t : w.tokens) {
    const GroupElement gen = generator(t.gen, j, t.coord);
    const EvalFunction &P = generator_period(token_name(t));
    const Int n = t.exp > 0 ? t.exp : -t.exp;
    if (n > 100000)
      throw OverflowError("word exponent too large for period extension");
    const Unit u = t.exp > 0 ? Unit{gen, P} : Unit{inverse(gen), inverse_period(P, gen)};
    const bool g3inv = t.gen == Gen::G3 && t.coord == 0 && t.exp < 0;
    for (Int r = 0; r < n; ++r) {
      // G2 G3^-1 = [T,0]: routing through G2 and back costs huge cancelling terms
      if (g3inv && r == 0 && !units.empty() && periods_.count("T") &&
          units.back().g == el::G2(j)) {
        units.back() = Unit{el::T(j), periods_.at("T")};
        continue;
      }
      units.push_back(u);
    }
  }
  auto ctx = f_.ctx;
  EvalFunction out;
  out.ctx = ctx;
  out.name = name_ + ".P[" + to_string(g) + "]";
  out.truncation = f_.truncation;
  out.eval = [units = std::move(units), ctx, j](const JacobiPoint &p) {
    // P_{t1...tn} = sum_i P_{t_i} | (t_{i+1} ... t_n)
    GroupElement s = identity(j);
    cplx total = 0;
    for (auto it = units.rbegin(); it != units.rend(); ++it) {
      total += slash_factor(*ctx, s, p) * it->P(act(s, p));
      s = it->g * s;
    }
    return total;
  };
  std::lock_guard<std::mutex> lock(mtx_);
  cache_.emplace(g, out);
  return out;
}

cplx cocycle_extend(const PeriodSystem &ps, const GroupElement &g, const JacobiPoint &p) {
  return ps.period(g)(p);
}

PeriodSystemPtr PeriodRegistry::register_integral(const std::string &name, const EvalFunction &f,
                                                  const std::map<std::string, EvalFunction> &periods) {
  if (systems_.count(name))
    throw DuplicateNameError("period system already registered: " + name);
  auto ps = std::make_shared<const PeriodSystem>(name, f, periods);
  systems_.emplace(name, ps);
  return ps;
}

PeriodSystemPtr PeriodRegistry::get(const std::string &name) const {
  auto it = systems_.find(name);
  if (it == systems_.end())
    throw UnknownFunctionError("no period system named " + name);
  return it->second;
}

std::vector<std::string> PeriodRegistry::names() const {
  std::vector<std::string> out;
  for (const auto &kv : systems_)
    out.push_back(kv.first);
  return out;
}

const EvalFunction &FunctionTable::function(const std::string &name) const {
  auto it = functions.find(name);
  if (it == functions.end())
    throw UnknownFunctionError("unknown function " + name);
  return it->second;
}

ContextPtr FunctionTable::context(const std::string &name) const {
  auto it = contexts.find(name);
  if (it == contexts.end())
    throw ConfigError("unknown context " + name);
  return it->second;
}

std::vector<std::string> FunctionTable::function_names() const {
  std::vector<std::string> out;
  for (const auto &kv : functions)
    out.push_back(kv.first);
  return out;
}

namespace {

EvalFunction make_fn(std::string name, ContextPtr ctx, const TruncationPolicy &pol,
                     std::function<cplx(const JacobiPoint &)> eval) {
  EvalFunction f;
  f.name = std::move(name);
  f.ctx = std::move(ctx);
  f.truncation = pol;
  f.eval = std::move(eval);
  return f;
}

EvalFunction difference(std::string name, const EvalFunction &a, const EvalFunction &b,
                        double sb = -1) {
  EvalFunction out = a;
  out.name = std::move(name);
  out.eval = [a, b, sb](const JacobiPoint &p) { return a(p) + sb * b(p); };
  return out;
}

} // namespace

FunctionTable standard_table(const TruncationPolicy &pol) {
  FunctionTable t;
  const MultiplierSpec zw = {{"S", std::exp(kI * kPi / 4.0)},
                             {"T", -1.0 / std::sqrt(cplx(0, -1))},
                             {"G3", -1.0},
                             {"G4", -1.0}};
  IndexMatrix Ma(2, 2);
  Ma << 0, 0, 0, -0.5;
  const MultiplierSpec ap = {
      {"T", std::sqrt(cplx(0, -1))}, {"G3", 1.0}, {"G4", 1.0}, {"G3[1]", 1.0}, {"G4[1]", 1.0}};
  t.contexts["zwegers"] = make_context(0.5, -0.5, zw, "zwegers");
  t.contexts["half"] = make_context(0.5, -0.5, {}, "half");
  t.contexts["plain"] = make_context(0, 0.0, {}, "plain");
  t.contexts["plain2"] = make_context(0, IndexMatrix::Zero(2, 2), {}, "plain2");
  t.contexts["appell"] = make_context(0.5, Ma, ap, "appell");
  t.contexts["coboundary"] = make_context(20, 1.0, {}, "coboundary");
  t.contexts["coboundary2"] = make_context(2, 1.0, {}, "coboundary2");

  const auto zc = t.contexts["zwegers"], ac = t.contexts["appell"],
             cc = t.contexts["coboundary"];
  auto &F = t.functions;
  F["zwegers_R"] = make_fn("zwegers_R", zc, pol, [pol](const JacobiPoint &p) {
    return zwegers_R(p.tau, p.z(0), pol);
  });
  F["mordell_h"] = make_fn("mordell_h", zc, pol, [pol](const JacobiPoint &p) {
    return mordell_h(p.tau, p.z(0), pol);
  });
  F["zwegers_h"] = make_fn("zwegers_h", zc, pol, [](const JacobiPoint &p) {
    return 2.0 * std::exp(-kPi * kI * p.z(0) - kPi * kI * p.tau / 4.0);
  });
  F["mordell3_rhs"] = make_fn("mordell3_rhs", t.contexts["plain"], pol, [](const JacobiPoint &p) {
    const cplx zh = p.z(0) + 0.5;
    return 2.0 / std::sqrt(-kI * p.tau) * std::exp(kPi * kI * zh * zh / p.tau);
  });
  F["appell_G"] = make_fn("appell_G", ac, pol, [pol](const JacobiPoint &p) {
    return appell_G(p.tau, p.z(0), p.z(1), pol);
  });
  F["appell_P"] = make_fn("appell_P", ac, pol, [pol](const JacobiPoint &p) {
    const cplx w = p.z(1);
    return std::exp(kPi * kI * w * w / p.tau) * appell_Phi(p.tau, w, pol);
  });
  F["appell_h"] = make_fn("appell_h", ac, pol, [](const JacobiPoint &p) {
    return std::exp(-2.0 * kPi * kI * p.z(1) - kPi * kI * p.tau);
  });
  F["one2"] = make_fn("one2", t.contexts["plain2"], pol, [](const JacobiPoint &) { return cplx(1); });

  F["coboundary_psi"] = make_fn("coboundary_psi", cc, pol, [](const JacobiPoint &p) {
    const cplx a = 2.0 * kPi * kI * p.tau, b = 2.0 * kPi * kI * p.z(0);
    return std::exp(a + b) + std::exp(a - b);
  });
  const EvalFunction psi = F["coboundary_psi"];
  F["coboundary_P"] = difference("coboundary_P", slash(psi, el::T()), psi);

  // true periods of R: R|T - R = -h, R|G3 - R = -2e^{-pi i z - pi i tau/4}
  EvalFunction mh = F["mordell_h"], zh = F["zwegers_h"];
  auto negate = [](EvalFunction f) {
    EvalFunction out = f;
    out.name = "-" + f.name;
    out.eval = [f](const JacobiPoint &p) { return -f(p); };
    return out;
  };
  t.systems.register_integral("zwegers_R", F["zwegers_R"],
                              {{"G0", zero_function(zc)},
                               {"G4", zero_function(zc)},
                               {"G3", negate(zh)},
                               {"T", negate(mh)}});
  auto register_coboundary = [&](const std::string &name, const EvalFunction &f) {
    t.systems.register_integral(name, f,
                                {{"G0", zero_function(f.ctx)},
                                 {"G4", zero_function(f.ctx)},
                                 {"G3", difference(name + "_G3", slash(f, el::G3()), f)},
                                 {"T", difference(name + "_T", slash(f, el::T()), f)}});
  };
  register_coboundary("coboundary", psi);
  // the same psi at weight 2, the cocycle behind the Poincare series
  EvalFunction psi2 = psi;
  psi2.ctx = t.contexts["coboundary2"];
  psi2.name = "coboundary2_psi";
  F["coboundary2_psi"] = psi2;
  register_coboundary("coboundary2", psi2);
  return t;
}

// ---- catalogue

const std::vector<std::string> &relation_tags() {
  static const std::vector<std::string> tags = {
      "MORDELL_1", "MORDELL_2", "MORDELL_3", "MORDELL_4", "GENERIC_T", "GENERIC_HECKE3",
      "PR_1",      "PR_2",      "PR_3",      "PR_4",      "PR_5",      "PR_6",
      "RR_T",      "RR_ST",     "ZW_1",      "ZW_2",      "ZW_3",      "ZW_4",
      "AP_1",      "AP_2",      "AP_3",      "PROPMOD_1", "PROPMOD_2"};
  return tags;
}

GroupElement element_from_json(const nlohmann::json &j, int dim) {
  auto embed = [dim](const GroupElement &m) {
    Mat2i A = m.mat;
    return make_element(A, IntVec::Zero(dim), IntVec::Zero(dim));
  };
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const GroupElement S = embed(el::S()), T = embed(el::T());
    if (s == "I")
      return identity(dim);
    if (s == "-I")
      return el::minusI(dim);
    if (s == "S" || s == "G0")
      return S;
    if (s == "T")
      return T;
    if (s == "ST")
      return S * T;
    if (s == "(ST)^2")
      return S * T * S * T;
    if (s == "STS")
      return S * T * S;
    if (s == "G1")
      return el::G1(dim);
    if (s == "G2")
      return el::G2(dim);
    for (int c = 0; c < dim; ++c) {
      const std::string suf = c ? "[" + std::to_string(c) + "]" : "";
      if (s == "G3" + suf)
        return el::G3(dim, c);
      if (s == "G4" + suf)
        return el::G4(dim, c);
    }
    throw ConfigError("unknown element name " + s);
  }
  if (!j.is_object() || !j.contains("mat"))
    throw ConfigError("element must be a name or {mat, lam, mu}");
  const auto &m = j.at("mat");
  if (!m.is_array() || m.size() != 4)
    throw ConfigError("mat must be [a, b, c, d]");
  Mat2i A;
  A << m[0].get<Int>(), m[1].get<Int>(), m[2].get<Int>(), m[3].get<Int>();
  auto vec = [&](const char *key) {
    IntVec v = IntVec::Zero(dim);
    if (j.contains(key)) {
      const auto &a = j.at(key);
      if (!a.is_array() || int(a.size()) != dim)
        throw DimensionError(std::string(key) + " has the wrong length");
      for (int n = 0; n < dim; ++n)
        v(n) = a[n].get<Int>();
    }
    return v;
  };
  return make_element(A, vec("lam"), vec("mu"));
}

namespace {

cplx coef_from_json(const nlohmann::json &j) {
  if (j.is_number())
    return j.get<double>();
  if (j.is_array() && j.size() == 2)
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("coef must be a number or [re, im]");
}

RelationTerm term_from_json(const nlohmann::json &j, int dim) {
  RelationTerm t;
  if (j.contains("coef"))
    t.coef = coef_from_json(j.at("coef"));
  if (j.contains("fn"))
    t.fn = j.at("fn").get<std::string>();
  else if (j.contains("system") && j.contains("period")) {
    t.system = j.at("system").get<std::string>();
    t.period_of = element_from_json(j.at("period"), dim);
  } else
    throw ConfigError("term needs 'fn' or 'system' + 'period'");
  if (j.contains("slash")) {
    const auto &s = j.at("slash");
    const auto steps = s.is_array() ? s : nlohmann::json::array({s});
    for (const auto &st : steps) {
      if (st.is_object() && st.contains("element"))
        t.slashes.push_back({element_from_json(st.at("element"), dim),
                             st.value("context", std::string())});
      else
        t.slashes.push_back({element_from_json(st, dim), {}});
    }
  }
  return t;
}

std::vector<RelationTerm> terms_from_json(const nlohmann::json &j, const char *key, int dim) {
  std::vector<RelationTerm> out;
  if (!j.contains(key))
    return out;
  for (const auto &t : j.at(key))
    out.push_back(term_from_json(t, dim));
  return out;
}

} // namespace

std::vector<Relation> load_catalogue(const nlohmann::json &j) {
  const auto &arr = j.is_object() ? j.at("relations") : j;
  std::vector<Relation> out;
  const auto &tags = relation_tags();
  for (const auto &r : arr) {
    Relation rel;
    rel.tag = r.at("tag").get<std::string>();
    if (std::find(tags.begin(), tags.end(), rel.tag) == tags.end())
      throw ConfigError("unknown relation tag " + rel.tag);
    rel.source = r.value("source", std::string());
    rel.dim = r.value("dim", 1);
    if (rel.dim < 1 || rel.dim > 2)
      throw DimensionError("relation dimension must be 1 or 2");
    rel.lhs = terms_from_json(r, "lhs", rel.dim);
    rel.rhs = terms_from_json(r, "rhs", rel.dim);
    if (r.contains("preconditions"))
      for (const auto &pc : r.at("preconditions"))
        rel.preconditions.push_back({pc.at("label").get<std::string>(),
                                     terms_from_json(pc, "lhs", rel.dim),
                                     terms_from_json(pc, "rhs", rel.dim)});
    out.push_back(std::move(rel));
  }
  return out;
}

std::vector<Relation> load_catalogue_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open relation catalogue " + path);
  try {
    return load_catalogue(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("relation catalogue: ") + e.what());
  }
}

const Relation &find_relation(const std::vector<Relation> &cat, const std::string &tag) {
  for (const auto &r : cat)
    if (r.tag == tag)
      return r;
  throw ConfigError("relation " + tag + " not in catalogue");
}

namespace {

EvalFunction resolve(const RelationTerm &t, const FunctionTable &table,
                     const std::map<std::string, EvalFunction> &overrides) {
  EvalFunction f;
  if (!t.fn.empty()) {
    auto it = overrides.find(t.fn);
    f = it != overrides.end() ? it->second : table.function(t.fn);
  } else {
    f = table.systems.get(t.system)->period(*t.period_of);
  }
  for (const auto &s : t.slashes)
    f = s.context.empty() ? slash(f, s.element) : slash(f, s.element, table.context(s.context));
  return f;
}

cplx sum_terms(const std::vector<RelationTerm> &terms, const JacobiPoint &p,
               const FunctionTable &table, const std::map<std::string, EvalFunction> &overrides) {
  cplx s = 0;
  for (const auto &t : terms) {
    const cplx v = resolve(t, table, overrides)(p);
    // an exact zero function stays exactly zero even with infinite factors
    if (v != cplx(0))
      s += t.coef * v;
  }
  return s;
}

} // namespace

RelationResult check_relation(const Relation &rel, const JacobiPoint &p, const FunctionTable &table,
                              const std::map<std::string, EvalFunction> &overrides) {
  if (p.dim() != rel.dim)
    throw DimensionError("point dimension differs from relation " + rel.tag);
  RelationResult res;
  for (const auto &pc : rel.preconditions) {
    const cplx d = sum_terms(pc.lhs, p, table, overrides) - sum_terms(pc.rhs, p, table, overrides);
    res.preconditions.push_back({pc.label, std::abs(d)});
  }
  res.lhs = sum_terms(rel.lhs, p, table, overrides);
  res.rhs = sum_terms(rel.rhs, p, table, overrides);
  res.residual = std::abs(res.lhs - res.rhs);
  return res;
}

// ---- Psi lift

cplx psi_lift(const EvalFunction &f, const JacobiPoint &p) {
  if (!f.ctx || f.ctx->dim() != 1 || p.dim() != 1)
    throw DimensionError("psi_lift needs a scalar Jacobi function");
  const cplx z = p.z(0);
  const double v = p.tau.imag(), y = z.imag();
  const double h0 = 1e-4 * std::max(1.0, std::abs(z));
  auto at = [&](cplx zz) {
    JacobiPoint q = p;
    q.z(0) = zz;
    return f(q);
  };
  auto dzbar = [&](double h) {
    const cplx dx = (at(z + h) - at(z - h)) / (2 * h);
    const cplx dy = (at(z + kI * h) - at(z - kI * h)) / (2 * h);
    return 0.5 * (dx + kI * dy);
  };
  const cplx d1 = dzbar(h0), d2 = dzbar(h0 / 2);
  const cplx rich = (4.0 * d2 - d1) / 3.0;
  // central differences: the two estimates differ by about (3/4) C h^2
  const double scale = std::max({1.0, std::abs(rich), std::abs(at(z))});
  const double target = 1e-7 * scale;
  if (!(std::abs(d2 - d1) <= 10 * target))
    throw DerivativeError("Richardson estimates disagree in psi_lift of " + f.name);
  const double k = f.ctx->k, m = f.ctx->M(0, 0);
  return std::pow(v, k) * std::exp(-4 * kPi * m * y * y / v) * rich;
}

// ---- growth

GrowthFit growth_profile(const EvalFunction &P, const GrowthGrid &grid) {
  const double m = P.ctx ? P.ctx->M(0, 0) : 0.0;
  struct Sample {
    double tau_abs, v, logn;
  };
  std::vector<Sample> samples;
  GrowthFit fit;
  bool all_zero = true;
  for (int iv = 0; iv < grid.n_v; ++iv) {
    const double v = grid.n_v == 1 ? grid.v_lo
                                   : grid.v_lo * std::pow(grid.v_hi / grid.v_lo,
                                                          double(iv) / (grid.n_v - 1));
    for (int iu = 0; iu < grid.n_u; ++iu) {
      const double u = grid.n_u == 1 ? grid.u_lo
                                     : grid.u_lo + (grid.u_hi - grid.u_lo) * iu / (grid.n_u - 1);
      for (int ix = 0; ix < grid.n_z; ++ix)
        for (int iy = 0; iy < grid.n_z; ++iy) {
          const double x = grid.z_max / std::sqrt(2.0) * (grid.n_z == 1 ? 0 : -1 + 2.0 * ix / (grid.n_z - 1));
          const double y = grid.z_max / std::sqrt(2.0) * (grid.n_z == 1 ? 0 : -1 + 2.0 * iy / (grid.n_z - 1));
          const JacobiPoint p = make_point(cplx(u, v), cplx(x, y));
          if (P.near_pole(p))
            continue;
          const cplx val = P(p);
          const double a = std::abs(val);
          if (!std::isfinite(a)) {
            fit.finite = false;
            continue;
          }
          ++fit.samples;
          if (a == 0)
            continue;
          all_zero = false;
          samples.push_back({std::abs(p.tau), v, std::log(a) - 2 * kPi * m * y * y / v});
        }
    }
  }
  if (all_zero)
    return fit;
  // choose (rho, sigma) so that the log bound log K + log(|tau|^rho + v^-sigma)
  // is tight in least squares; K then makes it a bound
  double best = std::numeric_limits<double>::infinity();
  for (int ir = 0; ir <= 16; ++ir)
    for (int is = 0; is <= 16; ++is) {
      const double rho = 0.25 * ir, sigma = 0.25 * is;
      double logK = -std::numeric_limits<double>::infinity();
      for (const auto &s : samples)
        logK = std::max(logK, s.logn - std::log(std::pow(s.tau_abs, rho) + std::pow(s.v, -sigma)));
      double ss = 0;
      for (const auto &s : samples) {
        const double d =
            logK + std::log(std::pow(s.tau_abs, rho) + std::pow(s.v, -sigma)) - s.logn;
        ss += d * d;
      }
      if (ss < best) {
        best = ss;
        fit.rho = rho;
        fit.sigma = sigma;
        fit.K = std::exp(logK);
      }
    }
  fit.max_ratio = 0;
  for (const auto &s : samples)
    fit.max_ratio = std::max(
        fit.max_ratio,
        std::exp(s.logn) / (std::pow(s.tau_abs, fit.rho) + std::pow(s.v, -fit.sigma)));
  fit.finite = fit.finite && std::isfinite(fit.K);
  return fit;
}

double lemma_linear_growth(const PeriodSystem &ps, const JacobiPoint &p, int lam_max, double rho,
                           double sigma) {
  if (ps.context()->dim() != 1)
    throw DimensionError("lemma check is for scalar systems");
  const double m = ps.context()->M(0, 0), v = p.tau.imag();
  const double gauge = std::pow(std::abs(p.tau), rho) + std::pow(v, -sigma);
  auto norm = [&](cplx val, const JacobiPoint &q) {
    const double y = q.z(0).imag();
    return std::abs(val) * std::exp(-2 * kPi * m * y * y / v);
  };
  const EvalFunction P1 = ps.period(el::G3());
  double K = 0;
  for (int r = -lam_max; r <= lam_max; ++r) {
    JacobiPoint q = p;
    q.z(0) += double(r) * p.tau;
    K = std::max(K, norm(P1(q), q) / gauge);
  }
  double worst = 0;
  for (int lam = -lam_max; lam <= lam_max; ++lam) {
    if (lam == 0)
      continue;
    const cplx val = cocycle_extend(ps, make_element(1, 0, 0, 1, lam, 0), p);
    const double bound = std::abs(lam) * K * gauge;
    worst = std::max(worst, bound > 0 ? norm(val, p) / bound : (val == cplx(0) ? 0.0 : INFINITY));
  }
  return worst;
}

} // namespace jpr
