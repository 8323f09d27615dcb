#include "cmsba/numeric/eval.hpp"

#include <cmath>
#include <numbers>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

#include "cmsba/error.hpp"

namespace cmsba {

namespace {

Complex ipow(Complex v, unsigned e) {
  Complex r = 1;
  while (e) {
    if (e & 1) r *= v;
    e >>= 1;
    if (e) v *= v;
  }
  return r;
}

// Value and sum of term magnitudes.
std::pair<Complex, double> eval_scaled(const MultiPoly& p, const Assignment& a) {
  Complex sum = 0;
  double scale = 0;
  for (const auto& t : p.terms()) {
    Complex v = t.coeff.get_d();
    for (std::size_t i = 0; i < kMaxSymbols; ++i)
      if (t.mono.exps[i]) v *= ipow(a.at(Symbol{static_cast<std::uint16_t>(i)}), t.mono.exps[i]);
    sum += v;
    scale += std::abs(v);
  }
  return {sum, scale};
}

Complex eval_affine(const AffineForm& f, const Assignment& a) {
  Complex v = f.constant().get_d();
  for (const auto& [s, c] : f.linear()) v += c.get_d() * a.at(s);
  return v;
}

}  // namespace

Assignment::Assignment(std::initializer_list<std::pair<Symbol, Complex>> values) {
  for (const auto& [s, v] : values) set(s, v);
}

Assignment& Assignment::set(Symbol s, Complex v) {
  values_[s.index] = v;
  set_[s.index] = true;
  return *this;
}

Complex Assignment::at(Symbol s) const {
  if (!set_[s.index]) throw MalformedExpression("no value assigned to " + VarTable::global().name(s));
  return values_[s.index];
}

Complex eval(const MultiPoly& p, const Assignment& a) { return eval_scaled(p, a).first; }

Complex eval(const RationalFn& f, const Assignment& a) {
  Complex v = eval(f.num(), a);
  for (const auto& [g, e] : f.den_factors()) {
    auto [d, scale] = eval_scaled(g, a);
    if (std::abs(d) <= 1e-12 * scale) throw NearSingular("denominator factor " + g.to_string() + " vanishes");
    v /= ipow(d, static_cast<unsigned>(e));
  }
  return v;
}

Complex eval(const SymExpr& e, const Assignment& a) {
  Complex sum = 0;
  for (const auto& [key, coeff] : e.terms()) {
    Complex v = eval(coeff, a);
    Complex arg = key.exp_arg.is_zero() ? Complex(0) : eval(key.exp_arg, a);
    for (const auto& [b, ex] : key.powers) {
      Complex base = a.at(b);
      if (base == Complex(0)) throw NearSingular("power of zero base " + VarTable::global().name(b));
      arg += eval_affine(ex, a) * std::log(base);
    }
    sum += v * std::exp(arg);
  }
  return sum;
}

Complex complex_lngamma(Complex z) {
  gsl_sf_result lnr, arg;
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  int status = gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
  gsl_set_error_handler(old);
  if (status != GSL_SUCCESS) throw NearSingular("log-gamma failed at a pole");
  return {lnr.val, arg.val};
}

Complex complex_gamma(Complex z) { return std::exp(complex_lngamma(z)); }

void check_branch_path(std::span<const Complex> path, const std::string& what) {
  for (std::size_t i = 1; i < path.size(); ++i)
    if (std::abs(std::arg(path[i]) - std::arg(path[i - 1])) > std::numbers::pi)
      throw BranchCutCrossing(what + ": path crosses the branch cut of the principal logarithm");
}

NumericResidue contour_residue_numeric(const std::function<Complex(Complex)>& f, Complex center, double eps,
                                       double tol, int max_nodes) {
  // Agreement is measured against the size of the integrand on the circle,
  // so a vanishing residue still converges.
  double scale = 0;
  auto trapezoid = [&](int n) {
    Complex s = 0;
    double mag = 0;
    for (int j = 0; j < n; ++j) {
      Complex d = eps * std::polar(1.0, 2 * std::numbers::pi * j / n);
      Complex v = f(center + d) * d;
      s += v;
      mag += std::abs(v);
    }
    scale = mag / n;
    return s / static_cast<double>(n);
  };
  int n = 16;
  Complex prev = trapezoid(n);
  while (2 * n <= max_nodes) {
    n *= 2;
    Complex cur = trapezoid(n);
    double err = std::abs(cur - prev);
    if (err <= tol * std::max(std::abs(cur), 1e-3 * scale)) return {cur, err, n};
    prev = cur;
  }
  throw QuadratureNonConvergence("circle quadrature did not converge with " + std::to_string(n) + " nodes");
}

NumericResidue contour_residue_numeric(const SymExpr& e, Symbol var, Complex center, double eps,
                                       const Assignment& rest, double tol) {
  Assignment a = rest;
  return contour_residue_numeric(
      [&](Complex z) {
        a.set(var, z);
        return eval(e, a);
      },
      center, eps, tol);
}

}  // namespace cmsba
