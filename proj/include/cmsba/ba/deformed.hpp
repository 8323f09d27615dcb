#pragma once

#include "cmsba/ba/ba_result.hpp"
#include "cmsba/report.hpp"
#include "cmsba/residue/residue.hpp"

namespace cmsba {

// Undeformed n-particle function used inside the deformed residue formulas
// at negative m = -m*-1: the one with multiplicity m* (same potential).
// m* = 0 gives the free exponential / monomial.
BAResult inner_rational(int n, int m_star);
BAResult inner_trig(int n, int m_star);

struct DeformedIntegrand {
  SymExpr integrand;
  ResiduePlan plan;
  SymExpr outside;  // everything in front of the integral except `constant`
  int sign = 1;     // A*(z,x)^(m*+1) = sign * A(z,x)^(m*+1)
  RationalFn constant;  // normalization with 2πi dropped
};

// `w_shift` is added to the exponent of each w_i in the trig integrand; the
// literal exponents are w_shift = 0, the dw/w measure is w_shift = -1.
DeformedIntegrand deformed_rational_integrand(int n, int m);
DeformedIntegrand deformed_trig_integrand(int n, int m, int w_shift = -1);

// m must be negative. Throws ConstructionError when the result breaks the
// expected form.
BAResult deformed_rational_residue(int n, int m);
BAResult deformed_trig_residue(int n, int m);

// Deformed operators: rational in (x, y), trig in (u, v) with u = exp(2x), v = exp(2y).
SymExpr apply_deformed_operator(const SymExpr& e, int n, int m, BACase c);

// -((λ,λ) + μ²/m) and -4((ν,ν) + μ²/m).
RationalFn deformed_eigenvalue(int n, int m, BACase c);

// P (or Q): coefficient times the expected denominator; nullopt if not polynomial.
std::optional<MultiPoly> deformed_numerator(const BAResult& r);

VerifyReport verify_deformed(const BAResult& r);
VerifyReport verify_deformed_structure(const BAResult& r);
VerifyReport verify_deformed(int n, int m, BACase c = BACase::deformed_rational);

}  // namespace cmsba
