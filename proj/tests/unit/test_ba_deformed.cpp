#include <gtest/gtest.h>

#include "cmsba/ba/deformed.hpp"
#include "cmsba/error.hpp"

using namespace cmsba;

namespace {

MultiPoly var(Symbol s) { return MultiPoly::variable(s); }
MultiPoly X(int i) { return var(x_sym(i)); }
MultiPoly L(int i) { return var(lambda_sym(i)); }
MultiPoly Y() { return var(y_sym()); }
MultiPoly MU() { return var(mu_sym()); }

BAResult literal_trig(int n, int m) {
  DeformedIntegrand in = deformed_trig_integrand(n, m, 0);
  BAResult r = deformed_trig_residue(n, m);
  r.expr = (iterated_residue(in.integrand, in.plan) * in.outside).scaled(in.constant * RationalFn(in.sign));
  return r;
}

}  // namespace

TEST(BaDeformed, KineticPartFixesEigenvalue) {
  for (int m : {-1, -2, 3}) {
    SymExpr e = SymExpr::exp(L(1) * X(1) + L(2) * X(2) + MU() * Y() * (Rational(1) / m));
    SymExpr kin = apply_deformed_operator(e, 2, m, BACase::deformed_rational);
    if (m != -1) {
      // Remove the potential to isolate the kinetic part.
      RationalFn pot = RationalFn::factored(MultiPoly(2 * m * (m + 1)), {{X(1) - X(2), 2}});
      for (int i : {1, 2}) pot += RationalFn::factored(MultiPoly(2 * (m + 1)), {{X(i) - Y(), 2}});
      kin -= e.scaled(pot);
    }
    EXPECT_EQ(kin, e.scaled(deformed_eigenvalue(2, m, BACase::deformed_rational))) << m;
  }
}

TEST(BaDeformed, PotentialCoupling) {
  SymExpr one(1);
  EXPECT_EQ(apply_deformed_operator(one, 1, -2, BACase::deformed_rational),
            SymExpr(RationalFn::factored(MultiPoly(-2), {{X(1) - Y(), 2}})));
}

TEST(BaDeformed, TrigKineticPart) {
  // -4(ν² + μ²/m) on u^ν v^(μ/m) at n = 1, m = -1, where the potential vanishes.
  PowerMap p = {{u_sym(1), AffineForm::of(nu_sym(1))}, {v_sym(), AffineForm::of(mu_sym(), -1)}};
  SymExpr e = SymExpr::term(RationalFn(1), MultiPoly{}, p);
  EXPECT_EQ(apply_deformed_operator(e, 1, -1, BACase::deformed_trig),
            e.scaled(deformed_eigenvalue(1, -1, BACase::deformed_trig)));
}

TEST(BaDeformed, RationalSmallCases) {
  // m = -1: the free exponential exp(λx - μy).
  EXPECT_EQ(deformed_rational_residue(1, -1).expr, SymExpr::exp(L(1) * X(1) - MU() * Y()));
  // m = -2 by hand: [1 + (λ-μ)(x-y)] / ((λ-μ)(x-y)).
  MultiPoly a = L(1) - MU(), s = X(1) - Y();
  SymExpr hand = SymExpr::term(RationalFn::factored(a * s + 1, {{a, 1}, {s, 1}}),
                               L(1) * X(1) - MU() * Y() * Rational(1, 2));
  EXPECT_EQ(deformed_rational_residue(1, -2).expr, hand);
}

TEST(BaDeformed, EigenAndStructure) {
  for (auto [n, m] : {std::pair{1, -1}, {2, -1}, {1, -2}, {2, -2}}) {
    BAResult r = deformed_rational_residue(n, m);
    VerifyReport e = verify_deformed(r);
    EXPECT_TRUE(e.pass) << n << "," << m << " " << e.detail;
    EXPECT_TRUE(e.parameters.contains("eigenvalue"));
    EXPECT_TRUE(verify_deformed_structure(r).pass) << n << "," << m;
  }
  for (auto [n, m] : {std::pair{1, -1}, {2, -1}, {1, -2}}) {
    BAResult r = deformed_trig_residue(n, m);
    EXPECT_TRUE(verify_deformed(r).pass) << n << "," << m;
    VerifyReport s = verify_deformed_structure(r);
    EXPECT_TRUE(s.pass) << n << "," << m << " " << s.detail;
  }
}

TEST(BaDeformed, TrigNormalizerAtMinusOne) {
  // Q / ((u1 - v)(ν1 - μ)) with Q of leading term (u1 - v)(ν1 - μ).
  BAResult r = deformed_trig_residue(1, -1);
  auto Q = deformed_numerator(r);
  ASSERT_TRUE(Q);
  EXPECT_EQ(*Q, (var(u_sym(1)) - var(v_sym())) * (var(nu_sym(1)) - MU()));
  const AffineForm* vp = r.expr.single_term().first.power_of(v_sym());
  ASSERT_TRUE(vp);
  EXPECT_EQ(*vp, AffineForm::of(mu_sym(), -1));
}

TEST(BaDeformed, LiteralTrigMeasureFails) {
  // Without the dw/w measure the eigen-equation fails; at m = -1 the
  // result is off by exactly u1.
  for (auto [n, m] : {std::pair{1, -1}, {1, -2}, {2, -1}}) EXPECT_FALSE(verify_deformed(literal_trig(n, m)).pass);
  EXPECT_EQ(literal_trig(1, -1).expr, deformed_trig_residue(1, -1).expr.scaled(RationalFn(var(u_sym(1)))));
}

TEST(BaDeformed, PositiveMRejected) {
  EXPECT_THROW(deformed_rational_residue(1, 1), ConstructionError);
  EXPECT_THROW(deformed_trig_residue(1, 0), ConstructionError);
  EXPECT_THROW(deformed_rational_residue(0, -1), ConstructionError);
}
