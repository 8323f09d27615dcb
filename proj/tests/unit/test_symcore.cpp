#include <gtest/gtest.h>

#include <random>

#include "cmsba/error.hpp"
#include "cmsba/symcore/gcd.hpp"
#include "cmsba/symcore/serialize.hpp"
#include "cmsba/symcore/series.hpp"

using namespace cmsba;

namespace {

MultiPoly X(int i) { return MultiPoly::variable(x_sym(i)); }
MultiPoly L(int i) { return MultiPoly::variable(lambda_sym(i)); }
MultiPoly var(Symbol s) { return MultiPoly::variable(s); }

// Random polynomial in x1, x2, lambda1 with small integer coefficients.
MultiPoly random_poly(std::mt19937& rng, int terms = 4) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, 2);
  MultiPoly p;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    m.exps[x_sym(1).index] = static_cast<std::uint8_t>(deg(rng));
    m.exps[x_sym(2).index] = static_cast<std::uint8_t>(deg(rng));
    m.exps[lambda_sym(1).index] = static_cast<std::uint8_t>(deg(rng));
    p += MultiPoly::monomial(m, coef(rng));
  }
  return p;
}

}  // namespace

TEST(MultiPoly, RingAxiomsOnRandomTriples) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    MultiPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(MultiPoly, ExactDivisionAndGcd) {
  MultiPoly a = (X(1) - X(2)) * (X(1) + L(1)) * (X(1) + L(1));
  MultiPoly b = (X(1) + L(1)) * (X(2) - 3);
  EXPECT_EQ(gcd(a, b), X(1) + L(1));
  EXPECT_EQ(*divide_exact(a, X(1) - X(2)), (X(1) + L(1)).pow(2));
  EXPECT_FALSE(divide_exact(a, X(2) - 3).has_value());
}

TEST(Normalize, CommonFactor) {
  RationalFn r = normalize(X(1) * X(1) - 1, X(1) - 1);
  EXPECT_TRUE(r.is_polynomial());
  EXPECT_EQ(r.num(), X(1) + 1);
}

TEST(Normalize, MonicScaling) {
  RationalFn r = normalize(X(1) * Rational(2), MultiPoly(4));
  EXPECT_TRUE(r.is_polynomial());
  EXPECT_EQ(r.num(), X(1) * Rational(1, 2));
}

TEST(Normalize, StaysIrreducible) {
  MultiPoly num = (X(1) - X(2)) * (L(1) - L(2)) - 2;
  RationalFn r = normalize(num, L(1) - L(2));
  EXPECT_EQ(r.num(), num);
  EXPECT_EQ(r.den(), L(1) - L(2));
  EXPECT_EQ(normalize(r), r);
}

TEST(Normalize, NonlinearFactorAndZeroDenominator) {
  MultiPoly q = X(1) * X(1) + L(1) * X(2) + 1;
  RationalFn r = normalize(q * (X(1) - 2), q * q);
  EXPECT_EQ(r.num(), X(1) - 2);
  EXPECT_EQ(r.den(), q);
  EXPECT_THROW(normalize(X(1), MultiPoly{}), MalformedExpression);
}

TEST(Normalize, Idempotent) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly n = random_poly(rng), d = random_poly(rng);
    if (d.is_zero()) continue;
    RationalFn r = normalize(n * (X(1) - X(2)), d * (X(1) - X(2)));
    EXPECT_EQ(normalize(r), r);
    EXPECT_EQ(r * RationalFn(d), RationalFn(n));
  }
}

TEST(Differentiate, ExpPoleAndPower) {
  SymExpr e = SymExpr::exp(L(1) * X(1) + L(2) * X(2));
  EXPECT_EQ(differentiate(e, x_sym(1)), e.scaled(L(1)));

  SymExpr p = RationalFn::fraction(1, X(1) - X(2));
  EXPECT_EQ(differentiate(p, x_sym(1)), SymExpr(RationalFn::fraction(-1, (X(1) - X(2)).pow(2))));

  SymExpr u = SymExpr::power(u_sym(1), AffineForm::of(nu_sym(1)));
  SymExpr expected = u.scaled(RationalFn::fraction(var(nu_sym(1)), var(u_sym(1))));
  EXPECT_EQ(differentiate(u, u_sym(1)), expected);
}

TEST(Differentiate, MixedPartialsCommute) {
  SymExpr e = SymExpr::term(RationalFn::fraction(X(1) * X(2) + L(1), (X(1) - X(2)).pow(2)),
                            L(1) * X(1) + L(2) * X(2), {{u_sym(1), AffineForm::of(nu_sym(1), Rational(1, 2))}});
  for (auto [a, b] : {std::pair{x_sym(1), x_sym(2)}, std::pair{x_sym(1), u_sym(1)},
                      std::pair{lambda_sym(1), x_sym(2)}}) {
    EXPECT_EQ(differentiate(differentiate(e, a), b), differentiate(differentiate(e, b), a));
  }
}

TEST(SymExpr, IntegerExponentPartsFoldIntoCoefficient) {
  AffineForm a = AffineForm::of(nu_sym(1)) + Rational(5, 2);
  SymExpr e = SymExpr::power(u_sym(1), a);
  const auto& [key, coeff] = e.single_term();
  ASSERT_EQ(key.powers.size(), 1u);
  EXPECT_EQ(key.powers[0].second.constant(), Rational(1, 2));
  EXPECT_EQ(coeff, RationalFn(var(u_sym(1)).pow(2)));
  EXPECT_THROW(SymExpr::exp(X(1) * X(2)), MalformedExpression);
  EXPECT_THROW(SymExpr::power(lambda_sym(1), AffineForm(Rational(1, 2))), MalformedExpression);
}

TEST(Substitute, ShiftAndExpAdditivity) {
  Symbol z = z_sym(1), t = series_var();
  SymExpr sq = (var(z) - X(1)).pow(2);
  EXPECT_EQ(substitute(sq, z, X(1) + var(t)), SymExpr(var(t).pow(2)));

  SymExpr ex = SymExpr::exp(L(1) * var(z));
  SymExpr got = substitute(ex, z, X(1) + var(t));
  EXPECT_EQ(got, SymExpr::exp(L(1) * X(1)) * SymExpr::exp(L(1) * var(t)));

  SymExpr pole = RationalFn::fraction(1, var(z) - X(2));
  EXPECT_EQ(substitute(pole, z, X(1) + var(t)), SymExpr(RationalFn::fraction(1, X(1) + var(t) - X(2))));

  EXPECT_THROW(substitute(ex, z, var(lambda_sym(2))), MalformedExpression);
}

TEST(Series, GeometricSeries) {
  Symbol t = series_var();
  SymExpr e = RationalFn::fraction(1, var(t).pow(2) * (1 - var(t)));
  auto s = series_expand(e, t, 0);
  EXPECT_EQ(s.low_order(), -2);
  EXPECT_EQ(s.coeff(-2), SymExpr(1));
  EXPECT_EQ(s.coeff(-1), SymExpr(1));
  EXPECT_EQ(s.coeff(0), SymExpr(1));
  EXPECT_THROW(s.coeff(1), std::out_of_range);
}

TEST(Series, ExponentialOverSquare) {
  Symbol t = series_var();
  SymExpr e = SymExpr::exp(L(1) * var(t)).scaled(RationalFn::fraction(1, var(t).pow(2)));
  auto s = series_expand(e, t, -1);
  EXPECT_EQ(s.coeff(-2), SymExpr(1));
  EXPECT_EQ(s.coeff(-1), SymExpr(L(1)));
}

TEST(Series, BinomialWithSymbolicExponent) {
  // (u + t)^e around t = 0, realized as w^e expanded at w = u.
  AffineForm e = AffineForm::of(nu_sym(1));
  SymExpr w = SymExpr::power(w_sym(1), e);
  auto s = series_expand_at(w, w_sym(1), var(u_sym(1)), 1);
  SymExpr ue = SymExpr::power(u_sym(1), e);
  EXPECT_EQ(s.coeff(0), ue);
  EXPECT_EQ(s.coeff(1), ue.scaled(RationalFn::fraction(var(nu_sym(1)), var(u_sym(1)))));
  EXPECT_THROW(series_expand(w, w_sym(1), 0), UnsupportedSingularity);
}

TEST(Series, LaurentPolynomialReproduced) {
  Symbol t = series_var();
  MultiPoly T = var(t);
  SymExpr e = SymExpr(RationalFn::fraction(3, T.pow(3))) + SymExpr(RationalFn::fraction(L(1), T)) +
              SymExpr(X(1) * T * T);
  auto s = series_expand(e, t, 3);
  EXPECT_EQ(s.coeff(-3), SymExpr(3));
  EXPECT_TRUE(s.coeff(-2).is_zero());
  EXPECT_EQ(s.coeff(-1), SymExpr(L(1)));
  EXPECT_TRUE(s.coeff(0).is_zero());
  EXPECT_EQ(s.coeff(2), SymExpr(X(1)));
  EXPECT_TRUE(s.coeff(3).is_zero());
}

TEST(Series, NoResidueWithoutPole) {
  std::mt19937 rng(3);
  Symbol z = z_sym(1);
  for (int trial = 0; trial < 10; ++trial) {
    MultiPoly n = random_poly(rng);
    SymExpr e = SymExpr::term(RationalFn::fraction(n * var(z), (var(z) - X(2)) * (var(z) + L(1))), L(2) * var(z));
    auto s = series_expand_at(e, z, X(1), -1);
    EXPECT_TRUE(s.coeff(-1).is_zero());
  }
}

TEST(LeadingTerm, Examples) {
  MultiPoly p = (X(1) - X(2)) * (L(1) - L(2)) - 2;
  EXPECT_EQ(leading_term(p), (X(1) - X(2)) * (L(1) - L(2)));
  EXPECT_EQ(leading_term(MultiPoly(5)), MultiPoly(5));
  EXPECT_EQ(leading_term(X(1) * X(1) + X(1)), X(1) * X(1));
  EXPECT_THROW(leading_term(MultiPoly{}), MalformedExpression);
}

TEST(Serialize, RoundTripIsBitExact) {
  SymExpr e = SymExpr::term(RationalFn::fraction((X(1) - X(2)) * (L(1) - L(2)) - 2,
                                                  (X(1) - X(2)) * (L(1) - L(2)) * Rational(3, 7)),
                            L(1) * X(1) + L(2) * X(2), {{u_sym(2), AffineForm::of(nu_sym(1), Rational(-1, 3))}});
  e += SymExpr(Rational(-11, 13));
  std::string text = serialize(e);
  SymExpr back = deserialize(text);
  EXPECT_EQ(back, e);
  EXPECT_EQ(serialize(back), text);
  EXPECT_THROW(deserialize("{\"vars\":[],\"terms\":[{\"coeff\":1}]}"), MalformedExpression);
}
