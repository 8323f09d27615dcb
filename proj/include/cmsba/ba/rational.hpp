#pragma once

#include "cmsba/ba/ba_result.hpp"
#include "cmsba/report.hpp"
#include "cmsba/residue/residue.hpp"

namespace cmsba {

// exp(λ1 x1), valid for every m.
BAResult ba_base(int m = 1);

// Integrand of the rank-raising residue formula with the z-independent
// factor A(x)^(m+1) split off (it is multiplied back after integration).
struct RankIntegrand {
  SymExpr integrand;
  ResiduePlan plan;
  RationalFn outside;   // A(x)^(m+1)
  RationalFn constant;  // ±prod (λ_i - λ_{k+1})^m / (m!)^k, sign (-1)^((m+1)k(k-1)/2)
  RationalFn inverse_constant;
};
RankIntegrand raise_rank_integrand(const BAResult& prev, int m);

// Ψ^(k+1) from Ψ^(k): k residues at z_i = x_i divided by the constant.
// Throws ConstructionError when the result breaks the expected form.
BAResult raise_rank(const BAResult& prev, int m);

// Memoized per process; thread-safe.
BAResult ba_rational(int n, int m);

// (λ1-λ2)^-m prod_{j=m..1} (D12 - 2j/(x1-x2)) exp(λ1 x1 + λ2 x2), D12 = ∂1 - ∂2.
BAResult operator_oracle_n2(int m);

// Ψ^(3)_m through the nested triple residue Res_{z1=x1} Res_{z2=x2} Res_{w=z1}.
SymExpr psi3_nested(int m);

// -Δe + sum_{i<j} 2m(m+1)/(x_i-x_j)^2 e over x1..xn.
SymExpr apply_calogero_moser(const SymExpr& e, int n, int m);

// P = coefficient * A(x)^m A(λ)^m; nullopt when that is not a polynomial.
std::optional<MultiPoly> rational_P(const BAResult& r);

VerifyReport verify_schrodinger(const BAResult& r);
VerifyReport verify_symmetry(const BAResult& r);
VerifyReport verify_leading_term(const BAResult& r);
inline VerifyReport verify_schrodinger(int n, int m) { return verify_schrodinger(ba_rational(n, m)); }
inline VerifyReport verify_symmetry(int n, int m) { return verify_symmetry(ba_rational(n, m)); }
inline VerifyReport verify_leading_term(int n, int m) { return verify_leading_term(ba_rational(n, m)); }

// Shared helper for symbolic reports: pass iff `residual` is identically zero.
VerifyReport symbolic_report(std::string id, nlohmann::json params, const SymExpr& residual);

}  // namespace cmsba
