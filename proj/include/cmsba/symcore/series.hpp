#pragma once

#include <optional>

#include "cmsba/symcore/laurent.hpp"
#include "cmsba/symcore/sym_expr.hpp"

namespace cmsba {

// Expansion of e in powers of t = var - center, with coefficients free of
// var, up to and including order `upto`. Throws PoleOrderExceeded if some
// term has a pole of order above max_pole, UnsupportedSingularity for a
// branch point at the center.
LaurentSeries<SymExpr> series_expand_at(const SymExpr& e, Symbol var, const MultiPoly& center,
                                        int upto, std::optional<int> max_pole = std::nullopt);

// Expansion around t = 0.
LaurentSeries<SymExpr> series_expand(const SymExpr& e, Symbol t, int upto);

// Highest pole order of e at var = center over all terms (0 if regular).
int pole_order(const SymExpr& e, Symbol var, const MultiPoly& center);

}  // namespace cmsba
