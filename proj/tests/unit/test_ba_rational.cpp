#include <gtest/gtest.h>

#include "cmsba/ba/rational.hpp"
#include "cmsba/error.hpp"

using namespace cmsba;

namespace {

MultiPoly var(Symbol s) { return MultiPoly::variable(s); }
MultiPoly X(int i) { return var(x_sym(i)); }
MultiPoly L(int i) { return var(lambda_sym(i)); }

SymExpr psi2_closed(int m) {
  MultiPoly a = L(1) - L(2), s = X(1) - X(2);
  RationalFn c;
  if (m == 1) c = RationalFn(1) - RationalFn::fraction(2, a * s);
  if (m == 2) c = RationalFn(1) - RationalFn::fraction(6, a * s) + RationalFn::fraction(12, (a * s).pow(2));
  return SymExpr::term(c, L(1) * X(1) + L(2) * X(2));
}

}  // namespace

TEST(BaRational, Base) {
  BAResult b = ba_base();
  EXPECT_EQ(b.expr, SymExpr::exp(L(1) * X(1)));
  EXPECT_EQ(differentiate(differentiate(b.expr, x_sym(1)), x_sym(1)), b.expr.scaled(L(1).pow(2)));
  EXPECT_TRUE(verify_symmetry(b).pass);
}

TEST(BaRational, RaiseRankClosedForms) {
  EXPECT_EQ(ba_rational(2, 1).expr, psi2_closed(1));
  EXPECT_EQ(ba_rational(2, 2).expr, psi2_closed(2));
}

TEST(BaRational, TraceMultipliesBackToRawResidue) {
  BAResult prev = ba_base(2);
  RankIntegrand in = raise_rank_integrand(prev, 2);
  SymExpr raw = iterated_residue(in.integrand, in.plan).scaled(in.outside);
  BAResult r = raise_rank(prev, 2);
  EXPECT_EQ(r.expr.scaled(r.trace_product()), raw);
}

TEST(BaRational, OracleMatchesRaiseRank) {
  for (int m = 1; m <= 3; ++m) EXPECT_EQ(operator_oracle_n2(m).expr, ba_rational(2, m).expr) << "m=" << m;
  EXPECT_EQ(operator_oracle_n2(0).expr, SymExpr::exp(L(1) * X(1) + L(2) * X(2)));
}

TEST(BaRational, LeadingTermAndDegree) {
  for (auto [n, m] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) {
    auto rep = verify_leading_term(n, m);
    EXPECT_TRUE(rep.pass) << n << "," << m << ": " << rep.detail;
  }
  auto P = rational_P(ba_rational(2, 1));
  ASSERT_TRUE(P);
  EXPECT_EQ(*P, (X(1) - X(2)) * (L(1) - L(2)) - 2);
  EXPECT_EQ(rational_P(ba_rational(3, 1))->total_degree(), 6u);
}

TEST(BaRational, SchrodingerAndSymmetry) {
  for (auto [n, m] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) {
    EXPECT_TRUE(verify_schrodinger(n, m).pass) << n << "," << m;
    EXPECT_TRUE(verify_symmetry(n, m).pass) << n << "," << m;
  }
}

TEST(BaRational, SimultaneousPermutationInvariance) {
  BAResult r = ba_rational(3, 1);
  std::map<Symbol, Symbol> perm = {{x_sym(1), x_sym(2)}, {x_sym(2), x_sym(3)}, {x_sym(3), x_sym(1)},
                                   {lambda_sym(1), lambda_sym(2)}, {lambda_sym(2), lambda_sym(3)},
                                   {lambda_sym(3), lambda_sym(1)}};
  EXPECT_EQ(rename(r.expr, perm), r.expr);
}

TEST(BaRational, OperatorPieces) {
  SymExpr e = SymExpr::exp(L(1) * X(1) + L(2) * X(2));
  EXPECT_EQ(apply_calogero_moser(e, 2, 0), e.scaled(-(L(1).pow(2) + L(2).pow(2))));
  SymExpr pot = apply_calogero_moser(e, 2, 1) - apply_calogero_moser(e, 2, 0);
  EXPECT_EQ(pot, e.scaled(RationalFn::fraction(4, (X(1) - X(2)).pow(2))));
}

TEST(BaRational, NestedTripleResidueMatches) {
  EXPECT_EQ(psi3_nested(1), ba_rational(3, 1).expr);
  EXPECT_EQ(psi3_nested(2), ba_rational(3, 2).expr);
}

TEST(BaRational, RejectsBadParameters) {
  EXPECT_THROW(ba_rational(0, 1), ConstructionError);
  EXPECT_THROW(raise_rank(ba_rational(2, 1), 2), ConstructionError);
}
