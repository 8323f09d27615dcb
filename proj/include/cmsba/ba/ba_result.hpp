#pragma once

#include <string>
#include <vector>

#include "cmsba/symcore/sym_expr.hpp"

namespace cmsba {

enum class BACase { rational, trig, deformed_rational, deformed_trig };

// "rational", "trig", "def-rat", "def-trig".
std::string case_tag(BACase c);
// Throws MalformedExpression for an unknown tag.
BACase parse_case(const std::string& tag);

// A constant divided out of the raw residue output.
struct NormalizationStep {
  std::string name;
  RationalFn value;
};

struct BAResult {
  BACase kind = BACase::rational;
  int n = 1;
  int m = 1;
  int m_star = 1;  // max(m, -m-1); equals m outside the deformed cases
  SymExpr expr;
  std::vector<Symbol> positions;  // x (or u), then y (or v) for the deformed cases
  std::vector<Symbol> spectral;   // λ (or ν), then μ
  // expr times the product of all values reproduces the raw residue output.
  std::vector<NormalizationStep> trace;

  RationalFn trace_product() const;
};

// A(a) = prod_{i<j} (a_i - a_j) as a factor list with the given exponent.
std::vector<RationalFn::Factor> vandermonde_list(std::span<const Symbol> a, int e);
// A(a, b) = prod_{i,j} (a_i - b_j).
std::vector<RationalFn::Factor> cross_list(std::span<const Symbol> a, std::span<const Symbol> b, int e);

// num / (expected) must be a polynomial: returns num * expected / den when
// every denominator factor of c occurs in `expected` with at least its
// exponent, nullopt otherwise. All factors are monic.
std::optional<MultiPoly> clear_denominator(const RationalFn& c, const std::vector<RationalFn::Factor>& expected);

// Coefficient, as a polynomial in the other variables, of prod syms_i^exps_i.
MultiPoly coefficient_of(const MultiPoly& p, std::span<const Symbol> syms, const std::vector<unsigned>& exps);

}  // namespace cmsba
