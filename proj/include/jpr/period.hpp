#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "jpr/automorphy.hpp"

namespace jpr {

// A Jacobi integral f together with its generator-level periods
// P_g = f|g - f. Keys: G0 (or S), G2, G3, G4, G3[1], G4[1], and T. When T is
// given and G2 is not, P_{G2} = P_T|G3 + P_{G3}.
class PeriodSystem {
public:
  PeriodSystem(std::string name, EvalFunction f, std::map<std::string, EvalFunction> periods);

  const std::string &name() const { return name_; }
  const EvalFunction &integral() const { return f_; }
  const ContextPtr &context() const { return f_.ctx; }
  bool has_generator(const std::string &key) const { return periods_.count(key) > 0; }

  // P_g extended along factor_word(g) by P_{ab} = P_a|b + P_b
  EvalFunction period(const GroupElement &g) const;

private:
  const EvalFunction &generator_period(const std::string &key) const;

  std::string name_;
  EvalFunction f_;
  std::map<std::string, EvalFunction> periods_;
  mutable std::mutex mtx_;
  mutable std::map<GroupElement, EvalFunction> cache_;
};

using PeriodSystemPtr = std::shared_ptr<const PeriodSystem>;

class PeriodRegistry {
public:
  PeriodSystemPtr register_integral(const std::string &name, const EvalFunction &f,
                                    const std::map<std::string, EvalFunction> &periods);
  PeriodSystemPtr get(const std::string &name) const;
  std::vector<std::string> names() const;

private:
  std::map<std::string, PeriodSystemPtr> systems_;
};

cplx cocycle_extend(const PeriodSystem &ps, const GroupElement &g, const JacobiPoint &p);

bool same_context(const AutomorphyContext &a, const AutomorphyContext &b);
EvalFunction zero_function(ContextPtr ctx);

// named functions, contexts and period systems used by the relation catalogue
struct FunctionTable {
  std::map<std::string, EvalFunction> functions;
  std::map<std::string, ContextPtr> contexts;
  PeriodRegistry systems;

  const EvalFunction &function(const std::string &name) const;
  ContextPtr context(const std::string &name) const;
  std::vector<std::string> function_names() const;
};

// Zwegers R, Mordell h, Appell G and their periods, the coboundary system
// psi = q(xi + 1/xi) at weight 20, index 1
FunctionTable standard_table(const TruncationPolicy &pol = {});

// ---- relation catalogue

struct SlashStep {
  GroupElement element;
  std::string context; // empty: the function's own context
};

struct RelationTerm {
  cplx coef = 1;
  std::string fn;                 // named function, or
  std::string system;             // period P_element of a registered system
  std::optional<GroupElement> period_of;
  std::vector<SlashStep> slashes; // applied left to right
};

struct RelationCheck {
  std::string label;
  std::vector<RelationTerm> lhs, rhs;
};

struct Relation {
  std::string tag;
  std::string source;
  int dim = 1;
  std::vector<RelationTerm> lhs, rhs;
  std::vector<RelationCheck> preconditions;
};

const std::vector<std::string> &relation_tags();

GroupElement element_from_json(const nlohmann::json &j, int dim);
std::vector<Relation> load_catalogue(const nlohmann::json &j);
std::vector<Relation> load_catalogue_file(const std::string &path);
const Relation &find_relation(const std::vector<Relation> &cat, const std::string &tag);

struct RelationResult {
  double residual = 0;
  cplx lhs = 0, rhs = 0;
  std::vector<std::pair<std::string, double>> preconditions;
};

// |LHS - RHS| at p; `overrides` replaces named functions of the table
RelationResult check_relation(const Relation &rel, const JacobiPoint &p, const FunctionTable &table,
                              const std::map<std::string, EvalFunction> &overrides = {});

// ---- Psi lift and growth

// v^k e^{-4 pi m y^2/v} df/dzbar by central differences with one Richardson level
cplx psi_lift(const EvalFunction &f, const JacobiPoint &p);

struct GrowthGrid {
  double v_lo = 0.3, v_hi = 5, u_lo = -0.5, u_hi = 0.5, z_max = 2;
  int n_v = 8, n_u = 3, n_z = 5;
};

struct GrowthFit {
  double K = 0, rho = 0, sigma = 0;
  double max_ratio = 0;
  bool finite = true;
  int samples = 0;
};

GrowthFit growth_profile(const EvalFunction &P, const GrowthGrid &grid = {});

// the linear bound |phi_[I,(lam,0)]| <= |lam| K (|tau|^rho + v^-sigma) e^{2 pi m y^2/v}
// with K the induction constant over the translates; returns the largest
// ratio lhs/bound over 1 <= |lam| <= lam_max (<= 1 when the bound holds)
double lemma_linear_growth(const PeriodSystem &ps, const JacobiPoint &p, int lam_max = 10,
                           double rho = 0, double sigma = 0);

} // namespace jpr
