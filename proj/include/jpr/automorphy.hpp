#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <Eigen/Core>
#include "json.hpp"

#include "jpr/group.hpp"
#include "jpr/policy.hpp"

namespace jpr {

using IndexMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2>;

// Multiplier values on named generators. Accepted names: G0 (or S), G1,
// G2, T, G3, G4, and G3[1], G4[1] for the second coordinate. An empty map
// means the trivial system.
using MultiplierSpec = std::map<std::string, cplx>;

struct AutomorphyContext {
  double k = 0;
  IndexMatrix M = IndexMatrix::Zero(1, 1);
  MultiplierSpec multiplier;
  std::string name;

  int dim() const { return static_cast<int>(M.rows()); }
  bool trivial() const { return multiplier.empty(); }

  struct Cache {
    std::mutex mtx;
    std::map<GroupElement, cplx> values;
  };
  std::shared_ptr<Cache> cache = std::make_shared<Cache>();
};

using ContextPtr = std::shared_ptr<const AutomorphyContext>;

ContextPtr make_context(double k, const IndexMatrix &M,
                        MultiplierSpec multiplier = {}, std::string name = {});
ContextPtr make_context(double k, double m, MultiplierSpec multiplier = {},
                        std::string name = {});

MultiplierSpec multiplier_from_json(const nlohmann::json &j);
nlohmann::json multiplier_to_json(const MultiplierSpec &spec);

// log of j_{k,M}(g, p); exp of the sum of logs gives exact products
cplx log_automorphy_factor(const AutomorphyContext &ctx, const GroupElement &g,
                           const JacobiPoint &p);
cplx automorphy_factor(const AutomorphyContext &ctx, const GroupElement &g,
                       const JacobiPoint &p);

// omega(g) from the generator values via the consistency identity at `base`
cplx multiplier_extend(const AutomorphyContext &ctx, const GroupElement &g);
cplx multiplier_extend_at(const AutomorphyContext &ctx, const GroupElement &g,
                          const JacobiPoint &base);

// omega(g) j(g, p)
cplx slash_factor(const AutomorphyContext &ctx, const GroupElement &g,
                  const JacobiPoint &p);

struct EvalFunction {
  std::function<cplx(const JacobiPoint &)> eval;
  ContextPtr ctx;
  std::function<bool(const JacobiPoint &)> pole_guard;
  TruncationPolicy truncation;
  std::string name;

  cplx operator()(const JacobiPoint &p) const;
  bool near_pole(const JacobiPoint &p) const {
    return pole_guard && pole_guard(p);
  }
};

EvalFunction slash(const EvalFunction &f, const GroupElement &g);
EvalFunction slash(const EvalFunction &f, const GroupElement &g, ContextPtr ctx);

} // namespace jpr
