#include "cmsba/residue/residue.hpp"

#include <set>

#include "cmsba/error.hpp"
#include "cmsba/symcore/series.hpp"

namespace cmsba {

SymExpr residue_at(const SymExpr& e, Symbol var, const MultiPoly& center, int max_order) {
  if (center.contains(var)) throw MalformedExpression("residue center depends on the integration variable");
  try {
    return series_expand_at(e, var, center, -1, max_order).coeff(-1);
  } catch (const PoleOrderExceeded& ex) {
    int widened = std::max(2 * max_order, 1);
    if (ex.required_order > widened) throw;
    return series_expand_at(e, var, center, -1, widened).coeff(-1);
  }
}

SymExpr iterated_residue(const SymExpr& e, const ResiduePlan& plan) {
  std::set<Symbol> done;
  SymExpr cur = e;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const auto& step = plan[i];
    if (!done.insert(step.var).second) throw ResidueError(i, "variable integrated twice");
    for (Symbol s : step.center.symbols())
      if (done.count(s)) throw ResidueError(i, "center refers to an integrated variable");
    try {
      cur = residue_at(cur, step.var, step.center, step.max_order);
    } catch (const ResidueError&) {
      throw;
    } catch (const Error& ex) {
      throw ResidueError(i, ex.what());
    }
  }
  return cur;
}

}  // namespace cmsba
