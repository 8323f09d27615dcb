// One line per acceptance criterion; exit status 0 only if all pass.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cmsba/ba/deformed.hpp"
#include "cmsba/ba/rational.hpp"
#include "cmsba/ba/trig.hpp"
#include "cmsba/numeric/identity.hpp"
#include "cmsba/numeric/quadrature.hpp"
#include "cmsba/residue/residue.hpp"

using namespace cmsba;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

MultiPoly var(Symbol s) { return MultiPoly::variable(s); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

const std::vector<std::pair<int, int>> kRationalSet{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}};

Outcome eigen_suite() {
  Outcome o;
  double slowest = 0;
  for (auto [n, m] : kRationalSet) {
    auto t0 = Clock::now();
    VerifyReport r = verify_schrodinger(n, m);
    double s = seconds_since(t0);
    slowest = std::max(slowest, s);
    o.require(r.pass, "eigen-equation at (" + std::to_string(n) + "," + std::to_string(m) + ")");
    o.require(s < 300, "time at (" + std::to_string(n) + "," + std::to_string(m) + ")");
  }
  o.detail << "5 cases, residual identically zero, slowest " << slowest << " s";
  return o;
}

Outcome symmetry_suite() {
  Outcome o;
  for (auto [n, m] : kRationalSet) o.require(verify_symmetry(n, m).pass, "symmetry at n=" + std::to_string(n));
  o.detail << "Ψ(x,λ) = Ψ(λ,x) exactly for 5 cases";
  return o;
}

Outcome oracle_suite() {
  Outcome o;
  for (int m = 1; m <= 3; ++m)
    o.require(operator_oracle_n2(m).expr == ba_rational(2, m).expr, "shift-operator form at m=" + std::to_string(m));
  o.require(psi3_nested(1) == ba_rational(3, 1).expr, "nested n=3 form");
  o.detail << "n=2 shift-operator form for m=1,2,3 and nested n=3 form equal exactly";
  return o;
}

Outcome trig_suite() {
  Outcome o;
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}}) {
    VerifyReport r = verify_trig_suite(n, m);
    o.require(r.pass, "trig (" + std::to_string(n) + "," + std::to_string(m) + "): " + r.detail);
  }
  o.detail << "eigenvalue -4(ν,ν), leading term and denominator for (2,1),(2,2),(3,1)";
  return o;
}

Outcome deformed_suite() {
  Outcome o;
  std::vector<std::tuple<BACase, int, int>> cases{{BACase::deformed_rational, 1, -1}, {BACase::deformed_rational, 2, -1},
                                                  {BACase::deformed_rational, 2, -2}, {BACase::deformed_trig, 1, -1},
                                                  {BACase::deformed_trig, 2, -1}};
  for (auto [c, n, m] : cases) {
    VerifyReport r = verify_deformed(n, m, c);
    o.require(r.pass, case_tag(c) + " (" + std::to_string(n) + "," + std::to_string(m) + ")");
    o.detail << (o.detail.tellp() > 0 ? "; " : "") << case_tag(c) << "(" << n << "," << m << "): E = " << r.parameters["eigenvalue"].get<std::string>();
  }
  return o;
}

Outcome selberg_suite() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(-1, 1), gap(0.3, 4), radius(0.5, 1.5), shift(2.5, 6);
  double worst2 = 0, worst3 = 0, worst_trig = 0, slowest = 0;
  auto timed = [&](const std::function<Complex()>& f) {
    auto t0 = Clock::now();
    Complex v = f();
    slowest = std::max(slowest, seconds_since(t0));
    return v;
  };
  for (int m : {1, 2})
    for (int t = 0; t < 10; ++t) {
      std::vector<Complex> x{{unit(rng), unit(rng)}, {unit(rng), unit(rng)}};
      while (std::abs((x[0] - x[1]).imag()) < 0.1) x[1] = {unit(rng), unit(rng)};
      Complex l2{unit(rng), unit(rng)};
      std::vector<Complex> lambda{l2 - Complex(gap(rng), unit(rng)), l2};
      Complex v = timed([&] { return psi2_integral(m, x, lambda, QuadConfig{}); });
      worst2 = std::max(worst2, rel(v, symbolic_point_fn(ba_rational(2, m), lambda)(x)));
    }
  for (int t = 0; t < 10; ++t) {
    std::vector<Complex> x(3);
    bool ok = false;
    while (!ok) {
      for (auto& v : x) v = {unit(rng), unit(rng)};
      ok = std::abs((x[0] - x[1]).imag()) >= 0.2 && std::abs((x[0] - x[2]).imag()) >= 0.2 &&
           std::abs((x[1] - x[2]).imag()) >= 0.2;
    }
    Complex l3{unit(rng), unit(rng)};
    Complex l2 = l3 - Complex(gap(rng), 0.5 * unit(rng));
    std::vector<Complex> lambda{l2 - Complex(gap(rng), 0.5 * unit(rng)), l2, l3};
    Complex v = timed([&] { return psi3_integral(1, x, lambda, QuadConfig{}); });
    worst3 = std::max(worst3, rel(v, symbolic_point_fn(ba_rational(3, 1), lambda)(x)));
  }
  for (int t = 0; t < 10; ++t) {
    double a1 = 3 * unit(rng), a2 = a1 + 0.5 + std::abs(unit(rng));
    std::vector<Complex> u{std::polar(radius(rng), a1), std::polar(radius(rng), a2)};
    Complex n2{unit(rng), unit(rng)};
    std::vector<Complex> nu{n2 + shift(rng), n2};
    SelbergSetup st{BACase::trig, 1, 1, nu, QuadConfig{}};
    PointFn f = selberg_raise_rank_numeric(symbolic_point_fn(ba_trig(1, 1), std::span(nu).first(1)), st);
    Complex v = timed([&] { return f(u); });
    worst_trig = std::max(worst_trig, rel(v, symbolic_point_fn(ba_trig(2, 1), nu)(u)));
  }
  o.require(worst2 <= 1e-8, "two-point integral");
  o.require(worst3 <= 1e-6, "triple integral");
  o.require(worst_trig <= 1e-6, "trig segment integral");
  o.require(slowest < 60, "time per integral");
  o.detail << "max rel err: n=2 " << worst2 << ", n=3 " << worst3 << ", trig " << worst_trig << "; slowest " << slowest
           << " s";
  return o;
}

Outcome kernel_suite() {
  Outcome o;
  double worst = 0;
  for (auto [k, l, p, q] : std::vector<std::array<int, 4>>{{2, 0, 1, 0}, {1, 1, 1, 0}, {2, 1, 1, 1}})
    for (double m : {1.0, 2.0}) {
      VerifyReport r = identity_check({BACase::rational, k, l, p, q, m, 0.7}, 20, 1, C0Formula::direct);
      worst = std::max(worst, r.residual);
      o.require(r.pass, "rational case");
    }
  VerifyReport t = identity_check({BACase::trig, 1, 1, 1, 0, 2, 0.7}, 20, 1, C0Formula::direct);
  o.require(t.pass, "trig (1,1,1,0), m=2");
  o.detail << "20 seeded points (seed 1); max rational residual " << worst << ", trig " << t.residual;
  return o;
}

Outcome sen_suite() {
  Outcome o;
  double e0 = sen_eigenvalue({1, 1}, 1);
  o.require(e0 == -2, "E0 = -2 for masses (1,1), β=1");
  double worst = 0;
  auto run = [&](std::vector<Rational> masses, Rational beta) {
    VerifyReport r = sen_check(masses, beta, 20, 1);
    worst = std::max(worst, r.residual);
    o.require(r.pass, "masses");
  };
  run({1, 1}, 1);
  run({1, Rational(1, 2)}, Rational(3, 7));
  run({1, Rational(2, 3), Rational(-5, 4)}, Rational(1, 3));
  for (int m : {2, 3}) run({1, Rational(1, m), -1, Rational(-1, m)}, -m);
  run({1, 1, Rational(1, 2), -1}, -2);
  o.detail << "E0(1,1;β=1) = " << e0 << "; 6 mass sets with N <= 4; max rel residual " << worst;
  return o;
}

Outcome calibration_suite() {
  Outcome o;
  std::mt19937_64 rng(99);
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
  double worst_gamma = 0;
  for (int nodes : {32, 64})
    for (int m = 0; m <= 6; ++m) {
      double exact = std::tgamma(m + 1.0);
      worst_gamma = std::max(worst_gamma, std::abs(gamma_integral(m, 1, nodes) - exact) / exact);
    }
  o.require(worst <= 1e-10, "numeric residues");
  o.require(worst_gamma <= 1e-13, "Γ-integral");
  o.detail << "50 residues max rel err " << worst << "; Γ-integral m<=6 max rel err " << worst_gamma;
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact eigen-equation (rational)", eigen_suite},
      {"bispectral symmetry", symmetry_suite},
      {"oracle equivalence", oracle_suite},
      {"trig suite", trig_suite},
      {"deformed suite", deformed_suite},
      {"numeric Selberg agreement", selberg_suite},
      {"kernel identity", kernel_suite},
      {"Sen eigenfunction", sen_suite},
      {"calibration", calibration_suite},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    all = all && o.pass;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << ": " << criteria[i].first << ": "
              << o.detail.str() << " (" << seconds_since(t0) << " s)" << std::endl;
  }
  return all ? 0 : 1;
}
