#include <gtest/gtest.h>

#include "cmsba/ba/trig.hpp"
#include "cmsba/error.hpp"

using namespace cmsba;

namespace {

MultiPoly var(Symbol s) { return MultiPoly::variable(s); }
MultiPoly U(int i) { return var(u_sym(i)); }
MultiPoly N(int i) { return var(nu_sym(i)); }

SymExpr unu(int n) {
  PowerMap p;
  for (int i = 1; i <= n; ++i) p.emplace_back(u_sym(i), AffineForm::of(nu_sym(i)));
  return SymExpr::term(RationalFn(1), MultiPoly{}, p);
}

// Hand-derived two-particle function at m = 1.
SymExpr phi21_closed() {
  MultiPoly q = (U(1) - U(2)) * (N(1) - N(2)) - (U(1) + U(2));
  return unu(2).scaled(RationalFn::factored(q, {{U(1) - U(2), 1}, {N(1) - N(2) - 1, 1}}));
}

SymExpr eigen_residual(const SymExpr& e, int n, int m) {
  MultiPoly nn;
  for (int i = 1; i <= n; ++i) nn += N(i).pow(2);
  return apply_sutherland_u(e, n, m) + e.scaled(RationalFn(nn * 4));
}

}  // namespace

TEST(BaTrig, Base) {
  EXPECT_EQ(ba_trig(1, 3).expr, unu(1));
  EXPECT_EQ(apply_sutherland_u(unu(1), 1, 1), unu(1).scaled(RationalFn(N(1).pow(2) * -4)));
  EXPECT_TRUE(verify_trig_suite(1, 2).pass);
}

TEST(BaTrig, PotentialTerm) {
  // On a u-free expression only the potential survives.
  SymExpr one(1);
  RationalFn expected = RationalFn::factored(U(1) * U(2) * 16, {{U(1) - U(2), 2}});
  EXPECT_EQ(apply_sutherland_u(one, 2, 1), SymExpr(expected));
}

TEST(BaTrig, ClosedFormIsEigenfunction) {
  EXPECT_TRUE(eigen_residual(phi21_closed(), 2, 1).is_zero());
  EXPECT_FALSE(eigen_residual(phi21_closed(), 2, 2).is_zero());
}

TEST(BaTrig, RaiseRankMatchesClosedForm) {
  BAResult r = ba_trig(2, 1);
  EXPECT_EQ(r.expr, phi21_closed());
  auto Q = trig_Q(r);
  ASSERT_TRUE(Q);
  EXPECT_EQ(leading_term(*Q), (U(1) - U(2)) * (N(1) - N(2)));
  auto c = trig_normalizer_list(r.spectral, 1);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].first, N(1) - N(2) - 1);
}

TEST(BaTrig, TraceMultipliesBackToRawResidue) {
  BAResult prev = ba_trig(2, 1);
  TrigRankIntegrand in = raise_rank_trig_integrand(prev, 1);
  EXPECT_EQ(in.sign, 1);
  EXPECT_EQ(raise_rank_trig_integrand(ba_trig(2, 2), 2).sign, -1);
  SymExpr raw = iterated_residue(in.integrand, in.plan) * in.outside;
  BAResult r = ba_trig(3, 1);
  EXPECT_EQ(r.expr.scaled(r.trace_product()), raw);
}

TEST(BaTrig, Suite) {
  for (auto [n, m] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
    VerifyReport rep = verify_trig_suite(n, m);
    EXPECT_TRUE(rep.pass) << n << "," << m << ": " << rep.detail;
  }
}

TEST(BaTrig, StructureRejectsWrongNormalization) {
  BAResult r = ba_trig(2, 1);
  r.expr = r.expr.scaled(RationalFn(2));
  EXPECT_FALSE(verify_trig_structure(r).pass);
}

TEST(BaTrig, BadParameters) {
  EXPECT_THROW(ba_trig(0, 1), ConstructionError);
  EXPECT_THROW(ba_trig(2, 0), ConstructionError);
  EXPECT_THROW(raise_rank_trig(trig_base(1), 0), ConstructionError);
}
