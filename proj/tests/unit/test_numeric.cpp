#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cmsba/ba/rational.hpp"
#include "cmsba/ba/trig.hpp"
#include "cmsba/error.hpp"
#include "cmsba/numeric/identity.hpp"
#include "cmsba/residue/residue.hpp"

using namespace cmsba;

namespace {

MultiPoly var(Symbol s) { return MultiPoly::variable(s); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST(Eval, Examples) {
  Assignment a{{lambda_sym(1), 1.0}, {x_sym(1), 0.0}};
  EXPECT_NEAR(std::abs(eval(SymExpr::exp(var(lambda_sym(1)) * var(x_sym(1))), a) - 1.0), 0, 1e-15);

  Assignment b{{x_sym(1), 1.0}, {x_sym(2), 0.0}, {lambda_sym(1), -1.0}, {lambda_sym(2), -5.0}};
  Complex v = eval(ba_rational(2, 1).expr, b);
  EXPECT_NEAR(std::abs(v - 0.5 * std::exp(-1.0)), 0, 1e-15);

  Assignment c{{u_sym(1), std::exp(2.0)}, {nu_sym(1), 0.5}};
  EXPECT_NEAR(std::abs(eval(ba_trig(1, 1).expr, c) - std::numbers::e), 0, 1e-14);
}

TEST(Eval, Errors) {
  EXPECT_THROW(eval(ba_rational(2, 1).expr, Assignment{{x_sym(1), 1.0}}), MalformedExpression);
  Assignment b{{x_sym(1), 0.25}, {x_sym(2), 0.25}, {lambda_sym(1), -1.0}, {lambda_sym(2), -5.0}};
  EXPECT_THROW(eval(ba_rational(2, 1).expr, b), NearSingular);
  std::vector<Complex> path{std::polar(1.0, 3.0), std::polar(1.0, -3.0)};
  EXPECT_THROW(check_branch_path(path, "test"), BranchCutCrossing);
}

TEST(ContourResidue, Basics) {
  auto inv = [](Complex z) { return 1.0 / z; };
  EXPECT_NEAR(std::abs(contour_residue_numeric(inv, 0, 1e-2).value - 1.0), 0, 1e-14);
  auto entire = [](Complex z) { return std::exp(z) * z * z; };
  EXPECT_NEAR(std::abs(contour_residue_numeric(entire, 0.3, 1e-2).value), 0, 1e-14);

  Symbol z = z_sym(1);
  MultiPoly a = var(lambda_sym(1)), x1 = var(x_sym(1)), x2 = var(x_sym(2));
  SymExpr e = SymExpr::term(RationalFn::factored(1, {{var(z) - x1, 2}, {var(z) - x2, 2}}), a * var(z));
  Assignment at{{x_sym(1), {0.3, 0.1}}, {x_sym(2), -0.2}, {lambda_sym(1), 2.0}};
  Complex exact = eval(residue_at(e, z, x1, 2), at);
  Complex numeric = contour_residue_numeric(e, z, {0.3, 0.1}, 1e-2, at).value;
  EXPECT_LE(rel(numeric, exact), 1e-10);
}

TEST(ContourResidue, MatchesSymbolicOnRandomIntegrands) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coeff(-3, 3), order(1, 3), other(0, 2);
  std::uniform_real_distribution<double> unit(-1, 1);
  Symbol z = z_sym(1);
  MultiPoly Z = var(z);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    MultiPoly num;
    for (int d = 0; d <= 3; ++d) num += MultiPoly(coeff(rng)) * Z.pow(d);
    if (num.is_zero()) num = MultiPoly(1);
    int e1 = order(rng);
    std::vector<RationalFn::Factor> den{{Z - var(x_sym(1)), e1}};
    for (int j = 2; j <= 3; ++j)
      if (int ej = other(rng)) den.push_back({Z - var(x_sym(j)), ej});
    SymExpr e = SymExpr::term(RationalFn::factored(num, den), var(lambda_sym(1)) * Z);

    Assignment at{{lambda_sym(1), {unit(rng), unit(rng)}}};
    Complex c1{unit(rng), unit(rng)};
    at.set(x_sym(1), c1);
    for (int j = 2; j <= 3; ++j) {
      Complex cj;
      do cj = {2 * unit(rng), 2 * unit(rng)};
      while (std::abs(cj - c1) < 0.5);
      at.set(x_sym(j), cj);
    }
    Complex exact = eval(residue_at(e, z, var(x_sym(1)), e1), at);
    Complex numeric = contour_residue_numeric(e, z, c1, 0.1, at).value;
    worst = std::max(worst, std::abs(numeric - exact) / std::max(std::abs(exact), 1e-300));
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(Quadrature, GammaCalibration) {
  for (int nodes : {32, 64})
    for (double c : {0.5, 1.0, 2.5})
      for (int m = 0; m <= 6; ++m) {
        double exact = std::tgamma(m + 1.0) / std::pow(c, m + 1);
        EXPECT_LE(std::abs(gamma_integral(m, c, nodes) - exact), 1e-13 * exact) << m << " " << c << " " << nodes;
      }
  // A few ulps: the GSL weights come from an eigenvalue solve.
  EXPECT_NEAR(gamma_integral(2, 1, 64), 2.0, 8 * std::numeric_limits<double>::epsilon());
}

TEST(Quadrature, ConfigValidation) {
  QuadConfig q;
  q.nodes = 3;
  EXPECT_THROW(q.validate(), MalformedExpression);
  q.nodes = 8;
  q.tolerance = 1.5;
  EXPECT_THROW(q.validate(), MalformedExpression);
  EXPECT_THROW(gauss_jacobi_unit(16, -1.2), CertificateViolation);
  EXPECT_THROW(gauss_laguerre(16, -0.5), CertificateViolation);
}

TEST(Selberg, Psi2AtRandomCertifiedPoints) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1, 1), gap(0.3, 4);
  for (int m : {1, 2}) {
    auto symbolic = ba_rational(2, m);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Complex> x{{unit(rng), unit(rng)}, {unit(rng), unit(rng)}};
      while (std::abs((x[0] - x[1]).imag()) < 0.1) x[1] = {unit(rng), unit(rng)};
      Complex l2{unit(rng), unit(rng)};
      std::vector<Complex> lambda{l2 - Complex(gap(rng), unit(rng)), l2};
      auto t0 = std::chrono::steady_clock::now();
      Complex v = psi2_integral(m, x, lambda, QuadConfig{});
      EXPECT_LT(seconds_since(t0), 60);
      Complex s = symbolic_point_fn(symbolic, lambda)(x);
      EXPECT_LE(rel(v, s), 1e-8) << "m=" << m << " trial " << trial;
      SelbergSetup st{BACase::rational, m, 1, lambda, QuadConfig{}};
      PointFn f = selberg_raise_rank_numeric(symbolic_point_fn(ba_rational(1, m), std::span(lambda).first(1)), st);
      EXPECT_LE(rel(f(x), s), 1e-8);
    }
  }
}

TEST(Selberg, Psi3TripleIntegral) {
  // The first point has a small Im gap; it needs the tilted rays.
  std::vector<std::vector<Complex>> xs{
      {{0.9, 0.1}, {-0.3, -0.12}, {0.1, 0.9}}, {{0.5, 0.3}, {-0.5, -0.2}, {0.1, 0.9}}, {{0.2, -0.6}, {0.7, 0.4}, {-0.3, 0.1}}};
  std::vector<Complex> lambda{-6, {-3.5, 0.4}, -1};
  Complex s;
  for (const auto& x : xs) {
    auto t0 = std::chrono::steady_clock::now();
    Complex v = psi3_integral(1, x, lambda, QuadConfig{});
    EXPECT_LT(seconds_since(t0), 60);
    s = symbolic_point_fn(ba_rational(3, 1), lambda)(x);
    EXPECT_LE(rel(v, s), 1e-6);
  }
  // Rank raising from the two-point function gives the same value.
  SelbergSetup st{BACase::rational, 1, 2, lambda, QuadConfig{}};
  PointFn f = selberg_raise_rank_numeric(symbolic_point_fn(ba_rational(2, 1), std::span(lambda).first(2)), st);
  EXPECT_LE(rel(f(xs.back()), s), 1e-6);
}

TEST(Selberg, TrigSegmentIntegral) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(-1, 1), radius(0.5, 1.5), shift(2.5, 6);
  for (int trial = 0; trial < 10; ++trial) {
    double a1 = 3 * unit(rng), a2 = a1 + 0.5 + std::abs(unit(rng));
    std::vector<Complex> u{std::polar(radius(rng), a1), std::polar(radius(rng), a2)};
    Complex n2{unit(rng), unit(rng)};
    // Real differences keep the endpoint behaviour a pure power of τ.
    std::vector<Complex> nu{n2 + shift(rng), n2};
    SelbergSetup st{BACase::trig, 1, 1, nu, QuadConfig{}};
    auto t0 = std::chrono::steady_clock::now();
    Complex v = selberg_raise_rank_numeric(symbolic_point_fn(ba_trig(1, 1), std::span(nu).first(1)), st)(u);
    EXPECT_LT(seconds_since(t0), 60);
    EXPECT_LE(rel(v, symbolic_point_fn(ba_trig(2, 1), nu)(u)), 1e-6) << trial;
  }
}

TEST(Selberg, CertificateViolations) {
  std::vector<Complex> x{{0.5, 0.2}, -0.5};
  std::vector<Complex> bad{-1, -5};
  EXPECT_THROW(psi2_integral(1, x, bad, QuadConfig{}), CertificateViolation);

  std::vector<Complex> lambda{-6, -3.5, -1};
  std::vector<Complex> same_im{{0.5, 0.3}, {-0.5, 0.3}, {0.1, 0.9}};
  EXPECT_THROW(psi3_integral(1, same_im, lambda, QuadConfig{}), CertificateViolation);

  std::vector<Complex> nu{1.2, 0.5};  // Re(ν1 - ν2) - m - 1 <= -1
  SelbergSetup st{BACase::trig, 1, 1, nu, QuadConfig{}};
  PointFn f = selberg_raise_rank_numeric(symbolic_point_fn(ba_trig(1, 1), std::span(nu).first(1)), st);
  std::vector<Complex> u{1, std::polar(0.8, 0.7)};
  EXPECT_THROW(f(u), CertificateViolation);
  std::vector<Complex> nu_ok{5, 0.5};
  SelbergSetup st2{BACase::trig, 1, 1, nu_ok, QuadConfig{}};
  PointFn g = selberg_raise_rank_numeric(symbolic_point_fn(ba_trig(1, 1), std::span(nu_ok).first(1)), st2);
  std::vector<Complex> same_arg{1, 2};
  EXPECT_THROW(g(same_arg), CertificateViolation);
}

TEST(Selberg, DeformedRationalPositiveBranch) {
  QuadConfig q;
  q.tolerance = 1e-10;
  std::vector<Complex> spec{{-3.1, 0.2}, {-2.2, -0.1}, {-0.5, 0.3}};
  std::vector<Complex> pt{{0.3, 0.2}, {-0.4, -0.5}, {0.1, 0.6}};
  for (int m : {1, 2}) {
    SelbergSetup st{BACase::deformed_rational, m, 2, spec, q};
    PointFn f = selberg_raise_rank_numeric(symbolic_point_fn(ba_rational(2, m), std::span(spec).first(2)), st);
    Complex E = -(spec[0] * spec[0] + spec[1] * spec[1] + spec[2] * spec[2] / double(m));
    EXPECT_TRUE(numeric_eigen_check(f, BACase::deformed_rational, 2, m, E, {pt}, {1e-2, true}, 1e-5).pass);
    // Normalization: the prefactor tends to 1 far out.
    std::vector<Complex> far = pt;
    for (auto& v : far) v *= 40.0;
    Complex ex = spec[0] * far[0] + spec[1] * far[1] + spec[2] * far[2] / double(m);
    EXPECT_LT(std::abs(f(far) / std::exp(ex) - 1.0), 0.25);
  }
}

TEST(Selberg, DeformedTrigPositiveBranch) {
  QuadConfig q;
  q.tolerance = 1e-12;
  q.max_levels = 4;
  std::vector<Complex> spec{{7.3, 0.2}, {0.4, 0.3}};
  std::vector<Complex> pt{std::polar(1.2, 0.3), std::polar(0.9, 1.5)};
  Complex E = -4.0 * (spec[0] * spec[0] + spec[1] * spec[1]);
  SelbergSetup st{BACase::deformed_trig, 1, 1, spec, q};
  PointFn f = selberg_raise_rank_numeric(symbolic_point_fn(ba_trig(1, 1), std::span(spec).first(1)), st);
  EXPECT_TRUE(numeric_eigen_check(f, BACase::deformed_trig, 1, 1, E, {pt}, {2e-3, true}, 1e-5).pass);
  std::vector<Complex> far{pt[0] * 1e4, pt[1]};
  Complex mono = std::exp(spec[0] * std::log(far[0]) + spec[1] * std::log(far[1]));
  EXPECT_LT(std::abs(f(far) / mono - 1.0), 1e-2);

  st.trig_w_shift = 0;
  PointFn literal = selberg_raise_rank_numeric(symbolic_point_fn(ba_trig(1, 1), std::span(spec).first(1)), st);
  EXPECT_FALSE(numeric_eigen_check(literal, BACase::deformed_trig, 1, 1, E, {pt}, {2e-3, true}, 1e-5).pass);
}

TEST(ContourResidue, RankRaisingOnCircles) {
  QuadConfig q;
  std::vector<Complex> x{{0.3, 0.2}, {-0.4, -0.1}, {0.2, -0.7}}, lambda{-1.3, {0.4, 0.2}, 2.1};
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {3, 1}}) {
    std::span<const Complex> xs(x.data(), n), ls(lambda.data(), n);
    Complex v = residue_raise_rank_numeric(BACase::rational, n, m, xs, ls, q);
    EXPECT_LE(rel(v, symbolic_point_fn(ba_rational(n, m), ls)(xs)), 1e-8) << n << " " << m;
  }
  std::vector<Complex> u{std::polar(1.1, 0.4), std::polar(0.7, -1.2)}, nu{{1.7, 0.3}, -0.6};
  Complex t = residue_raise_rank_numeric(BACase::trig, 2, 2, u, nu, q);
  EXPECT_LE(rel(t, symbolic_point_fn(ba_trig(2, 2), nu)(u)), 1e-8);

  std::vector<Complex> close{0.3, 0.32};
  EXPECT_THROW(residue_raise_rank_numeric(BACase::rational, 2, 1, close, std::span(lambda).first(2), q),
               CertificateViolation);
}
