#include "jpr/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>

#include "jpr/error.hpp"
#include "jpr/special.hpp"

#ifndef JPR_DEFAULT_DATA_DIR
#define JPR_DEFAULT_DATA_DIR "data"
#endif

namespace jpr {

using nlohmann::json;

std::string default_catalogue_path() { return std::string(JPR_DEFAULT_DATA_DIR) + "/relations.json"; }

namespace {

JacobiPoint point_from_json(const json &j) {
  // {"tau": [re, im], "z": [[re, im], ...]}
  const auto t = j.at("tau");
  JacobiPoint p;
  p.tau = cplx(t.at(0).get<double>(), t.at(1).get<double>());
  const auto &z = j.at("z");
  p.z.resize(static_cast<int>(z.size()));
  for (std::size_t n = 0; n < z.size(); ++n)
    p.z(static_cast<int>(n)) = cplx(z[n].at(0).get<double>(), z[n].at(1).get<double>());
  return p;
}

TruncationPolicy policy_from_json(const json &j) {
  TruncationPolicy pol;
  pol.abs_tol = j.value("abs_tol", pol.abs_tol);
  pol.max_terms = j.value("max_terms", pol.max_terms);
  pol.max_interval = j.value("max_interval", pol.max_interval);
  validate(pol);
  return pol;
}

json policy_to_json(const TruncationPolicy &pol) {
  return {{"abs_tol", pol.abs_tol}, {"max_terms", pol.max_terms}, {"max_interval", pol.max_interval}};
}

json cplx_json(cplx c) { return json::array({c.real(), c.imag()}); }

} // namespace

json point_to_json(const JacobiPoint &p) {
  json z = json::array();
  for (int n = 0; n < p.dim(); ++n)
    z.push_back(cplx_json(p.z(n)));
  return {{"tau", cplx_json(p.tau)}, {"z", z}};
}

SuiteConfig suite_config_from_json(const json &j) {
  SuiteConfig c;
  try {
    if (!j.is_object())
      throw ConfigError("suite config must be a JSON object");
    c.relations = j.at("relations").get<std::vector<std::string>>();
    if (c.relations.empty())
      throw ConfigError("suite config lists no relations");
    const auto &tags = relation_tags();
    for (const auto &t : c.relations)
      if (std::find(tags.begin(), tags.end(), t) == tags.end())
        throw ConfigError("unknown relation tag " + t);
    if (j.contains("grid")) {
      const auto &g = j["grid"];
      if (g.contains("v")) {
        c.grid.v_lo = g["v"].at(0);
        c.grid.v_hi = g["v"].at(1);
      }
      if (g.contains("u")) {
        c.grid.u_lo = g["u"].at(0);
        c.grid.u_hi = g["u"].at(1);
      }
      c.grid.z_box = g.value("z_box", c.grid.z_box);
      c.grid.count = g.value("count", c.grid.count);
      c.grid.seed = g.value("seed", c.grid.seed);
    }
    if (c.grid.count < 1)
      throw ConfigError("grid count must be at least 1");
    if (!(c.grid.v_lo > 0) || !(c.grid.v_hi >= c.grid.v_lo) || !(c.grid.u_hi >= c.grid.u_lo) ||
        !(c.grid.z_box >= 0))
      throw ConfigError("invalid grid ranges");
    if (j.contains("tolerances"))
      for (const auto &[tag, tol] : j["tolerances"].items()) {
        const double t = tol.get<double>();
        if (!(t > 0))
          throw ConfigError("tolerance for " + tag + " must be positive");
        c.tolerances[tag] = t;
      }
    c.default_tolerance = j.value("default_tolerance", c.default_tolerance);
    if (!(c.default_tolerance > 0))
      throw ConfigError("default_tolerance must be positive");
    if (j.contains("truncation"))
      c.truncation = policy_from_json(j["truncation"]);
    if (j.contains("points"))
      for (const auto &p : j["points"])
        c.points.push_back(point_from_json(p));
  } catch (const json::exception &e) {
    throw ConfigError(std::string("suite config: ") + e.what());
  } catch (const PreconditionError &e) {
    throw ConfigError(std::string("suite config: ") + e.what());
  }
  return c;
}

SuiteConfig load_suite_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open suite config " + path);
  try {
    return suite_config_from_json(json::parse(in));
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("suite config: ") + e.what());
  }
}

std::vector<JacobiPoint> grid_points(const GridSpec &g, int dim, std::uint64_t stream) {
  std::seed_seq seq{g.seed, stream};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(g.u_lo, g.u_hi), lv(std::log(g.v_lo), std::log(g.v_hi)),
      s(-g.z_box, g.z_box);
  std::vector<JacobiPoint> out;
  for (int i = 0; i < g.count; ++i) {
    JacobiPoint p;
    p.tau = cplx(u(rng), 0);
    p.tau.imag(std::exp(lv(rng)));
    p.z.resize(dim);
    for (int n = 0; n < dim; ++n) {
      const double re = s(rng);
      p.z(n) = cplx(re, s(rng));
    }
    out.push_back(p);
  }
  return out;
}

VerificationReport run_suite(const SuiteConfig &config, const FunctionTable &table,
                             const std::vector<Relation> &catalogue) {
  if (config.relations.empty())
    throw ConfigError("suite config lists no relations");
  VerificationReport rep;
  rep.truncation = config.truncation;
  for (std::size_t r = 0; r < config.relations.size(); ++r) {
    const std::string &tag = config.relations[r];
    const Relation &rel = find_relation(catalogue, tag);
    const auto it = config.tolerances.find(tag);
    const double tol = it == config.tolerances.end() ? config.default_tolerance : it->second;
    std::vector<JacobiPoint> pts;
    if (config.points.empty())
      pts = grid_points(config.grid, rel.dim, r);
    else
      for (const auto &p : config.points)
        if (p.dim() == rel.dim)
          pts.push_back(p);
    for (const auto &p : pts) {
      ReportEntry e;
      e.tag = tag;
      e.point = p;
      e.tolerance = tol;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        e.residual = check_relation(rel, p, table).residual;
        e.pass = e.residual < tol;
        e.status = e.pass ? "pass" : "fail";
      } catch (const PoleProximityError &) {
        e.status = "skipped: pole";
        e.residual = NAN;
      } catch (const std::exception &ex) {
        e.status = std::string("error: ") + ex.what();
        e.residual = NAN;
      }
      e.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (e.pass)
        ++rep.passed;
      else if (e.status == "skipped: pole")
        ++rep.skipped;
      else
        ++rep.failed;
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

VerificationReport run_suite(const SuiteConfig &config) {
  const auto table = standard_table(config.truncation);
  const auto cat = load_catalogue_file(default_catalogue_path());
  return run_suite(config, table, cat);
}

json report_to_json(const VerificationReport &r, bool with_times) {
  json entries = json::array();
  for (const auto &e : r.entries) {
    json j = {{"tag", e.tag},
              {"point", point_to_json(e.point)},
              {"residual", std::isfinite(e.residual) ? json(e.residual) : json(nullptr)},
              {"tolerance", e.tolerance},
              {"pass", e.pass},
              {"status", e.status},
              {"truncation", policy_to_json(r.truncation)}};
    if (with_times)
      j["wall_time"] = e.wall_time;
    entries.push_back(std::move(j));
  }
  return {{"schema", 1},
          {"entries", entries},
          {"summary", {{"passed", r.passed}, {"failed", r.failed}, {"skipped", r.skipped}}}};
}

// ---- evaluation

const std::map<std::string, EvalEntry> &eval_registry() {
  static const std::map<std::string, EvalEntry> reg = [] {
    std::map<std::string, EvalEntry> m;
    using P = const JacobiPoint &;
    using Pol = const TruncationPolicy &;
    m["theta_odd"] = {1, [](P p, Pol pol) { return theta_odd(p.tau, p.z(0), pol); }};
    m["theta0"] = {1, [](P p, Pol pol) { return theta0(p.tau, p.z(0), pol); }};
    m["theta1"] = {1, [](P p, Pol pol) { return theta1(p.tau, p.z(0), pol); }};
    m["eta"] = {0, [](P p, Pol pol) { return eta(p.tau, pol); }};
    m["eta_product"] = {0, [](P p, Pol pol) { return eta_product(p.tau, pol); }};
    m["lerch_mu"] = {2, [](P p, Pol pol) { return lerch_mu(p.tau, p.z(0), p.z(1), pol); }};
    m["appell_K1"] = {2, [](P p, Pol pol) { return appell_K1(p.tau, p.z(0), p.z(1), pol); }};
    m["appell_Phi"] = {1, [](P p, Pol pol) { return appell_Phi(p.tau, p.z(0), pol); }};
    m["hstar"] = {1, [](P p, Pol pol) { return hstar(p.tau, p.z(0), 12, pol); }};
    m["e21_star"] = {1, [](P p, Pol pol) { return e21_star(p.tau, p.z(0), 12, pol); }};
    // everything the relation catalogue knows by name
    const auto t = standard_table();
    for (const auto &[name, f] : t.functions) {
      if (m.count(name))
        continue;
      const int dim = f.ctx ? f.ctx->dim() : 1;
      m[name] = {dim, [name](P p, Pol pol) { return standard_table(pol).function(name)(p); }};
    }
    return m;
  }();
  return reg;
}

EvalResult eval_point(const std::string &name, const JacobiPoint &p, const TruncationPolicy &pol) {
  const auto &reg = eval_registry();
  const auto it = reg.find(name);
  if (it == reg.end())
    throw UnknownFunctionError("no function named " + name);
  const int need = std::max(it->second.dim, 0);
  if (p.dim() != need && !(need == 0 && p.dim() <= 1))
    throw DimensionError(name + " takes " + std::to_string(need) + " z coordinate(s)");
  validate(pol);
  EvalResult r;
  r.name = name;
  r.truncation = pol;
  r.value = it->second.fn(p, pol);
  TruncationPolicy tight = pol;
  tight.abs_tol = pol.abs_tol / 100;
  r.error_estimate = std::abs(it->second.fn(p, tight) - r.value);
  return r;
}

json eval_to_json(const EvalResult &r, const JacobiPoint &p) {
  return {{"schema", 1},
          {"fn", r.name},
          {"point", point_to_json(p)},
          {"value", cplx_json(r.value)},
          {"error_estimate", r.error_estimate},
          {"truncation", policy_to_json(r.truncation)}};
}

} // namespace jpr
