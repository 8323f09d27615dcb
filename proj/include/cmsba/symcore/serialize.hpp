#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "cmsba/symcore/sym_expr.hpp"

namespace cmsba {

// Canonical JSON tree:
//   {"vars": [{"name": "x1", "kind": "position"}, ...],
//    "terms": [{"coeff": {"num": P, "den": [[P, e], ...]}, "exp": P,
//               "powers": [[i, {"const": "p/q", "linear": [[i, "p/q"], ...]}], ...]}]}
// with P = [[[[i, deg], ...], "p/q"], ...] and i indexing "vars". Only
// symbols that occur are listed, in table order, so the output does not
// depend on unrelated registrations.
nlohmann::json to_json(const SymExpr& e);
// Interns the listed symbols (by name and kind) and rebuilds the expression.
// Throws MalformedExpression on structural errors.
SymExpr from_json(const nlohmann::json& j);

std::string serialize(const SymExpr& e);
SymExpr deserialize(const std::string& text);

}  // namespace cmsba
