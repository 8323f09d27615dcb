#pragma once

#include "cmsba/ba/ba_result.hpp"
#include "cmsba/report.hpp"
#include "cmsba/residue/residue.hpp"

namespace cmsba {

// u1^ν1.
BAResult trig_base(int m = 1);

// prod_{s=1..m} prod_{i<j} (ν_i - ν_j - s) as a factor list.
std::vector<RationalFn::Factor> trig_normalizer_list(std::span<const Symbol> nu, int m);

struct TrigRankIntegrand {
  SymExpr integrand;  // A(w)^(m+1) / A(w,u)^(m+1) prod w_i^(m - ν_{k+1}) Φ(w)
  ResiduePlan plan;
  SymExpr outside;    // A(u)^(m+1) prod u_i^ν_{k+1}
  int sign = 1;       // A*(w,u)^(m+1) = sign * A(w,u)^(m+1)
  RationalFn binomials;          // prod_i binom(ν_i - ν_{k+1} - 1, m)
  RationalFn inverse_binomials;
};
TrigRankIntegrand raise_rank_trig_integrand(const BAResult& prev, int m);

// Φ^(k+1) from Φ^(k) by k residues at w_i = u_i.
BAResult raise_rank_trig(const BAResult& prev, int m);

// Memoized per process; thread-safe.
BAResult ba_trig(int n, int m);

// Sutherland operator in u_i = exp(2 x_i):
// -sum 4(u_i^2 ∂_i^2 + u_i ∂_i) + sum_{i<j} 8m(m+1) u_i u_j / (u_i - u_j)^2.
SymExpr apply_sutherland_u(const SymExpr& e, int n, int m);

// Q = coefficient * A(u)^m C_m(ν); nullopt when that is not a polynomial.
std::optional<MultiPoly> trig_Q(const BAResult& r);

VerifyReport verify_trig_eigen(const BAResult& r);
// Q polynomial, leading form A(u)^m A(ν)^m, and the coefficient of the
// lex-largest u-monomial of Q equals that of A(u)^m C_m(ν).
VerifyReport verify_trig_structure(const BAResult& r);
// Both of the above.
VerifyReport verify_trig_suite(int n, int m);

}  // namespace cmsba
