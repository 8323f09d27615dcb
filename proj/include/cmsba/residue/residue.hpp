#pragma once

#include <vector>

#include "cmsba/symcore/sym_expr.hpp"

namespace cmsba {

// One integration step: residue in `var` at `center`, expecting a pole of
// order at most `max_order`.
struct ResidueStep {
  Symbol var;
  MultiPoly center;
  int max_order = 1;
};

// Steps are evaluated in list order (first = innermost).
using ResiduePlan = std::vector<ResidueStep>;

// Coefficient of (var - center)^-1, i.e. (2 pi i)^-1 times the contour
// integral. Escalates max_order once (to the actual pole order, if at most
// twice the requested bound) before rethrowing PoleOrderExceeded.
SymExpr residue_at(const SymExpr& e, Symbol var, const MultiPoly& center, int max_order);

// Throws ResidueError carrying the failing step index; checks that the plan
// does not reuse a variable or center on an integrated variable.
SymExpr iterated_residue(const SymExpr& e, const ResiduePlan& plan);

}  // namespace cmsba
