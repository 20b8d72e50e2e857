#include "jpr/automorphy.hpp"

#include <cmath>
#include <numbers>

#include "jpr/error.hpp"

namespace jpr {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

struct Valued {
  GroupElement g;
  cplx w;
};

JacobiPoint default_base(int j) {
  JacobiPoint p;
  p.tau = kI;
  p.z = JacobiPoint::ZVec::Zero(j);
  return p;
}

Valued combine(const AutomorphyContext &ctx, const Valued &x, const Valued &y,
               const JacobiPoint &base) {
  GroupElement xy = compose(x.g, y.g);
  const cplx l = log_automorphy_factor(ctx, x.g, act(y.g, base)) +
                 log_automorphy_factor(ctx, y.g, base) -
                 log_automorphy_factor(ctx, xy, base);
  return {std::move(xy), x.w * y.w * std::exp(l)};
}

Valued invert(const AutomorphyContext &ctx, const Valued &x,
              const JacobiPoint &base) {
  GroupElement gi = inverse(x.g);
  const cplx l = log_automorphy_factor(ctx, x.g, act(gi, base)) +
                 log_automorphy_factor(ctx, gi, base);
  return {std::move(gi), 1.0 / (x.w * std::exp(l))};
}

Valued raise(const AutomorphyContext &ctx, Valued x, Int e,
             const JacobiPoint &base) {
  const int j = x.g.dim();
  if (e < 0) {
    x = invert(ctx, x, base);
    e = -e;
  }
  Valued r{identity(j), 1.0};
  while (e > 0) {
    if (e & 1)
      r = combine(ctx, r, x, base);
    e >>= 1;
    if (e > 0)
      x = combine(ctx, x, x, base);
  }
  return r;
}

const cplx *lookup(const MultiplierSpec &spec, const std::string &a,
                   const std::string &b = {}) {
  auto it = spec.find(a);
  if (it != spec.end())
    return &it->second;
  if (!b.empty()) {
    it = spec.find(b);
    if (it != spec.end())
      return &it->second;
  }
  return nullptr;
}

std::string coord_name(const char *base, int coord) {
  return coord == 0 ? std::string(base)
                    : std::string(base) + "[" + std::to_string(coord) + "]";
}

cplx generator_value(const AutomorphyContext &ctx, Gen gen, int coord,
                     const JacobiPoint &base) {
  const MultiplierSpec &spec = ctx.multiplier;
  const cplx *v = nullptr;
  switch (gen) {
  case Gen::G0:
    v = lookup(spec, "G0", "S");
    break;
  case Gen::G3:
    v = lookup(spec, coord_name("G3", coord));
    break;
  case Gen::G4:
    v = lookup(spec, coord_name("G4", coord));
    break;
  case Gen::G2:
    v = lookup(spec, "G2");
    if (!v) {
      const cplx *t = lookup(spec, "T");
      const cplx *g3 = lookup(spec, "G3");
      if (t && g3) {
        const int j = ctx.dim();
        return combine(ctx, {el::T(j), *t}, {el::G3(j), *g3}, base).w;
      }
    }
    break;
  }
  if (!v)
    throw MissingGeneratorError("no multiplier value for " +
                                token_name({gen, coord, 1}) + " in context '" +
                                ctx.name + "'");
  return *v;
}

} // namespace

void validate(const TruncationPolicy &pol) {
  if (!(pol.abs_tol >= 1e-14))
    throw ConfigError("abs_tol must be >= 1e-14");
  if (pol.max_terms < 16)
    throw ConfigError("max_terms must be >= 16");
  if (!(pol.max_interval > 0))
    throw ConfigError("max_interval must be positive");
}

ContextPtr make_context(double k, const IndexMatrix &M, MultiplierSpec multiplier,
                        std::string name) {
  if (M.rows() != M.cols() || M.rows() < 1 || M.rows() > 2)
    throw DimensionError("index matrix must be 1x1 or 2x2");
  if (!M.isApprox(M.transpose()))
    throw DimensionError("index matrix must be symmetric");
  if (std::abs(2 * k - std::round(2 * k)) > 1e-12)
    throw ConfigError("weight must be a half-integer");
  for (const auto &[gen, val] : multiplier)
    if (std::abs(std::abs(val) - 1.0) > 1e-12)
      throw ConfigError("multiplier value for " + gen + " is not unimodular");
  auto ctx = std::make_shared<AutomorphyContext>();
  ctx->k = k;
  ctx->M = M;
  ctx->multiplier = std::move(multiplier);
  ctx->name = std::move(name);
  return ctx;
}

ContextPtr make_context(double k, double m, MultiplierSpec multiplier,
                        std::string name) {
  return make_context(k, IndexMatrix::Constant(1, 1, m), std::move(multiplier),
                      std::move(name));
}

MultiplierSpec multiplier_from_json(const nlohmann::json &j) {
  MultiplierSpec spec;
  const nlohmann::json &arr = j.is_object() && j.contains("multiplier") ? j.at("multiplier") : j;
  if (!arr.is_array())
    throw ConfigError("multiplier must be an array of {generator, value}");
  for (const auto &e : arr) {
    if (!e.contains("generator") || !e.contains("value"))
      throw ConfigError("multiplier entry needs 'generator' and 'value'");
    const auto &v = e.at("value");
    if (!v.is_array() || v.size() != 2)
      throw ConfigError("multiplier value must be [re, im]");
    spec[e.at("generator").get<std::string>()] =
        cplx(v[0].get<double>(), v[1].get<double>());
  }
  return spec;
}

nlohmann::json multiplier_to_json(const MultiplierSpec &spec) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &[gen, val] : spec)
    arr.push_back({{"generator", gen}, {"value", {val.real(), val.imag()}}});
  return arr;
}

cplx log_automorphy_factor(const AutomorphyContext &ctx, const GroupElement &g,
                           const JacobiPoint &p) {
  const int j = ctx.dim();
  if (g.dim() != j || p.dim() != j)
    throw DimensionError("element, point and context dimensions differ");
  const double c = double(g.c()), d = double(g.d());
  const cplx den = c * p.tau + d;
  using CVec = JacobiPoint::ZVec;
  CVec lam(j), mu(j);
  for (int n = 0; n < j; ++n) {
    lam(n) = double(g.lat(0, n));
    mu(n) = double(g.lat(1, n));
  }
  const CVec zt = p.z + lam * p.tau + mu;
  const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2> Mc =
      ctx.M.cast<cplx>();
  auto Q = [&](const CVec &x, const CVec &y) { return (x.transpose() * Mc * y)(0, 0); };
  const cplx e = -c / den * Q(zt, zt) + p.tau * Q(lam, lam) + 2.0 * Q(lam, p.z) +
                 Q(lam, mu);
  return -ctx.k * std::log(den) + 2.0 * kPi * kI * e;
}

cplx automorphy_factor(const AutomorphyContext &ctx, const GroupElement &g,
                       const JacobiPoint &p) {
  return std::exp(log_automorphy_factor(ctx, g, p));
}

cplx multiplier_extend_at(const AutomorphyContext &ctx, const GroupElement &g,
                          const JacobiPoint &base) {
  if (ctx.trivial())
    return 1.0;
  const int j = ctx.dim();
  const Word w = factor_word(g);
  Valued acc{identity(j), 1.0};
  for (const Token &t : w.tokens) {
    const Valued gen{generator(t.gen, j, t.coord),
                     generator_value(ctx, t.gen, t.coord, base)};
    acc = combine(ctx, acc, raise(ctx, gen, t.exp, base), base);
  }
  return acc.w;
}

cplx multiplier_extend(const AutomorphyContext &ctx, const GroupElement &g) {
  if (ctx.trivial())
    return 1.0;
  {
    std::lock_guard<std::mutex> lock(ctx.cache->mtx);
    auto it = ctx.cache->values.find(g);
    if (it != ctx.cache->values.end())
      return it->second;
  }
  const cplx w = multiplier_extend_at(ctx, g, default_base(ctx.dim()));
  std::lock_guard<std::mutex> lock(ctx.cache->mtx);
  ctx.cache->values.emplace(g, w);
  return w;
}

cplx slash_factor(const AutomorphyContext &ctx, const GroupElement &g,
                  const JacobiPoint &p) {
  return multiplier_extend(ctx, g) * automorphy_factor(ctx, g, p);
}

cplx EvalFunction::operator()(const JacobiPoint &p) const {
  if (near_pole(p))
    throw PoleProximityError("point inside pole guard of " + name);
  return eval(p);
}

EvalFunction slash(const EvalFunction &f, const GroupElement &g) {
  return slash(f, g, f.ctx);
}

EvalFunction slash(const EvalFunction &f, const GroupElement &g, ContextPtr ctx) {
  if (!ctx)
    throw ContextMismatchError("slash of a function without context");
  EvalFunction out;
  out.ctx = ctx;
  out.truncation = f.truncation;
  out.name = f.name + "|" + to_string(g);
  out.eval = [f, g, ctx](const JacobiPoint &p) {
    return slash_factor(*ctx, g, p) * f(act(g, p));
  };
  if (f.pole_guard) {
    auto guard = f.pole_guard;
    out.pole_guard = [guard, g](const JacobiPoint &p) { return guard(act(g, p)); };
  }
  return out;
}

} // namespace jpr
