#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "jpr/period.hpp"

namespace jpr {

struct GridSpec {
  double v_lo = 0.5, v_hi = 2.0;   // v log-uniform
  double u_lo = -0.45, u_hi = 0.45;
  double z_box = 0.7;              // each Re, Im of z uniform in [-z_box, z_box]
  int count = 10;
  std::uint64_t seed = 1;
};

struct SuiteConfig {
  std::vector<std::string> relations;
  GridSpec grid;
  std::map<std::string, double> tolerances;
  double default_tolerance = 1e-8;
  TruncationPolicy truncation;
  // explicit points, used instead of the grid when non-empty
  std::vector<JacobiPoint> points;
};

SuiteConfig suite_config_from_json(const nlohmann::json &j);
SuiteConfig load_suite_config(const std::string &path);

struct ReportEntry {
  std::string tag;
  JacobiPoint point;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
  std::string status; // "pass", "fail", "skipped: pole", "error: ..."
  double wall_time = 0;
};

struct VerificationReport {
  std::vector<ReportEntry> entries;
  TruncationPolicy truncation;
  int passed = 0, failed = 0, skipped = 0;
  bool ok() const { return failed == 0; }
};

// grid points for one relation; deterministic in (seed, relation index)
std::vector<JacobiPoint> grid_points(const GridSpec &g, int dim, std::uint64_t stream);

VerificationReport run_suite(const SuiteConfig &config, const FunctionTable &table,
                             const std::vector<Relation> &catalogue);
// standard table with the config's truncation and the bundled catalogue
VerificationReport run_suite(const SuiteConfig &config);

nlohmann::json report_to_json(const VerificationReport &r, bool with_times = true);

std::string default_catalogue_path();

// ---- point evaluation

struct EvalEntry {
  int dim = 1; // number of z coordinates; 0 for functions of tau alone
  std::function<cplx(const JacobiPoint &, const TruncationPolicy &)> fn;
};

const std::map<std::string, EvalEntry> &eval_registry();

struct EvalResult {
  std::string name;
  cplx value = 0;
  double error_estimate = 0; // change against a rerun at abs_tol / 100
  TruncationPolicy truncation;
};

EvalResult eval_point(const std::string &name, const JacobiPoint &p,
                      const TruncationPolicy &pol = {});
nlohmann::json eval_to_json(const EvalResult &r, const JacobiPoint &p);

nlohmann::json point_to_json(const JacobiPoint &p);

} // namespace jpr
