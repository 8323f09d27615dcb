#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>

#include "cmsba/symcore/sym_expr.hpp"

namespace cmsba {

using Complex = std::complex<double>;

// Values for registered symbols; dense over the symbol table.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<Symbol, Complex>> values);

  Assignment& set(Symbol s, Complex v);
  bool has(Symbol s) const { return set_[s.index]; }
  // Throws MalformedExpression for a symbol without a value.
  Complex at(Symbol s) const;

 private:
  std::array<Complex, kMaxSymbols> values_{};
  std::array<bool, kMaxSymbols> set_{};
};

Complex eval(const MultiPoly& p, const Assignment& a);
// Throws NearSingular when a denominator factor is below 1e-12 times the
// size of its terms.
Complex eval(const RationalFn& f, const Assignment& a);
// Power factors use the principal branch: b^e = exp(e log b).
Complex eval(const SymExpr& e, const Assignment& a);

// Γ(z) for complex z via GSL's complex log-gamma.
Complex complex_gamma(Complex z);
Complex complex_lngamma(Complex z);

// Throws BranchCutCrossing if the principal argument jumps by more than π
// between consecutive points.
void check_branch_path(std::span<const Complex> path, const std::string& what);

struct NumericResidue {
  Complex value;
  double error = 0;  // |I_N - I_2N|
  int nodes = 0;
};

// (2πi)^-1 times the integral over |z - center| = eps by the trapezoid rule,
// doubling the node count until two estimates agree to `tol` (relative).
NumericResidue contour_residue_numeric(const std::function<Complex(Complex)>& f, Complex center, double eps,
                                       double tol = 1e-13, int max_nodes = 1 << 14);
// Same for a symbolic integrand in `var` with the other symbols fixed by `rest`.
NumericResidue contour_residue_numeric(const SymExpr& e, Symbol var, Complex center, double eps,
                                       const Assignment& rest, double tol = 1e-13);

}  // namespace cmsba
