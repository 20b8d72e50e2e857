// jpr: batch verification front end

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "jpr/error.hpp"
#include "jpr/poincare.hpp"
#include "jpr/suite.hpp"

using namespace jpr;
using nlohmann::json;

namespace {

std::vector<double> parse_reals(const std::string &s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception &) {
      throw ConfigError("not a number: '" + tok + "'");
    }
    if (used != tok.size())
      throw ConfigError("not a number: '" + tok + "'");
    out.push_back(x);
  }
  return out;
}

JacobiPoint parse_point(const std::string &tau, const std::string &z) {
  const auto t = parse_reals(tau);
  if (t.size() != 2)
    throw ConfigError("--tau takes RE,IM");
  JacobiPoint p;
  p.tau = cplx(t[0], t[1]);
  if (!(t[1] > 0))
    throw ConfigError("tau must lie in the upper half plane");
  const auto zs = z.empty() ? std::vector<double>{} : parse_reals(z);
  if (zs.size() % 2)
    throw ConfigError("--z takes RE,IM pairs");
  p.z.resize(static_cast<int>(zs.size() / 2));
  for (std::size_t n = 0; n < zs.size(); n += 2)
    p.z(static_cast<int>(n / 2)) = cplx(zs[n], zs[n + 1]);
  return p;
}

void emit(const json &j, const std::string &out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f)
    throw ConfigError("cannot write " + out);
  f << j.dump(2) << "\n";
}

json cj(cplx c) { return json::array({c.real(), c.imag()}); }

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Jacobi integrals: relation checks, point evaluation, Poincare series"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  auto *suite = app.add_subcommand("suite", "run a relation suite from a JSON config");
  suite->add_option("--config", config_path, "suite config")->required();
  suite->add_option("--out", out_path, "write the report here instead of stdout");

  std::string fn, tau_s, z_s;
  double tol = TruncationPolicy{}.abs_tol;
  auto *eval = app.add_subcommand("eval", "evaluate a registered function at one point");
  eval->add_option("--fn", fn, "function name")->required();
  eval->add_option("--tau", tau_s, "RE,IM")->required();
  eval->add_option("--z", z_s, "RE,IM[,RE,IM]");
  eval->add_option("--tol", tol, "truncation abs_tol");

  double k = 20;
  int C = 10, L = 5;
  std::string point_s, gamma_s = "T";
  auto *pc = app.add_subcommand("poincare", "Poincare series of the weight 2 coboundary cocycle");
  pc->add_option("--k", k, "weight of the Eisenstein factor (even, >= 4)");
  pc->add_option("--C", C, "bound on max(|c|,|d|)");
  pc->add_option("--L", L, "bound on |lambda|");
  pc->add_option("--point", point_s, "TAU_RE,TAU_IM,Z_RE,Z_IM")->required();
  pc->add_option("--gamma", gamma_s, "group element for the functional equation (T, S, G3, ...)");

  auto *lr = app.add_subcommand("list-relations", "list the relation catalogue");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*suite) {
      const auto cfg = load_suite_config(config_path);
      const auto rep = run_suite(cfg);
      emit(report_to_json(rep), out_path);
      std::cerr << rep.passed << " passed, " << rep.failed << " failed, " << rep.skipped
                << " skipped\n";
      return rep.ok() ? 0 : 1;
    }
    if (*eval) {
      const auto p = parse_point(tau_s, z_s);
      TruncationPolicy pol;
      pol.abs_tol = tol;
      const auto r = eval_point(fn, p, pol);
      emit(eval_to_json(r, p), "");
      return 0;
    }
    if (*pc) {
      const auto v = parse_reals(point_s);
      if (v.size() != 4 || !(v[1] > 0))
        throw ConfigError("--point takes TAU_RE,TAU_IM,Z_RE,Z_IM with TAU_IM > 0");
      const auto p = make_point(cplx(v[0], v[1]), cplx(v[2], v[3]));
      const auto table = standard_table();
      const auto ps = table.systems.get("coboundary2");
      const auto ctx = make_context(k, 1.0);
      const auto gamma = element_from_json(gamma_s, 1);
      const auto g = eisenstein_g(*ctx, p, C, L);
      const auto phi = poincare_phi(*ps, *ctx, p, C, L);
      const auto fe = functional_eq_residual(*ps, *ctx, gamma, p, C, L);
      json j = {{"schema", 1},
                {"k", k},
                {"C", C},
                {"L", L},
                {"cocycle", ps->name()},
                {"point", point_to_json(p)},
                {"gamma", gamma_s},
                {"g", {{"value", cj(g.value)}, {"tail", g.tail}, {"terms", g.terms}}},
                {"Phi", {{"value", cj(phi.value)}, {"tail", phi.tail}, {"terms", phi.terms}}},
                {"functional_eq_residual", fe.residual}};
      try {
        j["F_residual"] = construct_F_residual(*ps, ps->context()->k, *ctx, gamma, p, C, L).residual;
      } catch (const PoleProximityError &) {
        j["F_residual"] = "skipped: pole";
      }
      emit(j, "");
      return 0;
    }
    if (*lr) {
      for (const auto &rel : load_catalogue_file(default_catalogue_path()))
        std::cout << rel.tag << "\t" << rel.source << "\n";
      return 0;
    }
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownFunctionError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
