#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cmsba/symcore/affine.hpp"
#include "cmsba/symcore/rational_fn.hpp"

namespace cmsba {

using PowerMap = std::vector<std::pair<Symbol, AffineForm>>;  // sorted by symbol, no zero exponents

// exp(exp_arg) * prod base^exponent. exp_arg is bilinear in position x
// spectral symbols; power bases are position symbols and the exponents keep
// only a fractional constant in [0, 1) plus spectral terms (integer parts
// live in the rational coefficient).
struct FactorKey {
  MultiPoly exp_arg;
  PowerMap powers;

  const AffineForm* power_of(Symbol s) const;
  friend bool operator==(const FactorKey&, const FactorKey&) = default;
  friend bool operator<(const FactorKey& a, const FactorKey& b);
};

// Finite sum of RationalFn * exp(bilinear) * prod u^affine.
class SymExpr {
 public:
  SymExpr() = default;
  SymExpr(RationalFn c);          // NOLINT(google-explicit-constructor)
  SymExpr(const MultiPoly& p);    // NOLINT(google-explicit-constructor)
  SymExpr(const Rational& c);     // NOLINT(google-explicit-constructor)
  SymExpr(int c);                 // NOLINT(google-explicit-constructor)

  // Validates and canonicalizes the factor key (folds integer exponent parts).
  static SymExpr term(RationalFn coeff, MultiPoly exp_arg, PowerMap powers = {});
  static SymExpr exp(const MultiPoly& arg);
  static SymExpr power(Symbol base, const AffineForm& exponent);

  const std::map<FactorKey, RationalFn>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool contains(Symbol s) const;
  // The coefficient of the single term; throws if the expression has other
  // than exactly one term.
  const std::pair<const FactorKey, RationalFn>& single_term() const;

  SymExpr operator-() const;
  SymExpr& operator+=(const SymExpr& o);
  SymExpr& operator-=(const SymExpr& o);
  SymExpr& operator*=(const SymExpr& o);
  friend SymExpr operator+(SymExpr a, const SymExpr& b) { return a += b; }
  friend SymExpr operator-(SymExpr a, const SymExpr& b) { return a -= b; }
  friend SymExpr operator*(const SymExpr& a, const SymExpr& b);
  friend bool operator==(const SymExpr& a, const SymExpr& b);

  SymExpr scaled(const RationalFn& c) const;
  template <class F>
  SymExpr map_coefficients(F&& f) const {
    SymExpr out;
    for (const auto& [k, c] : terms_) out.add_term(k, f(c));
    return out;
  }

  std::string to_string() const;
  std::string to_latex() const;

  // Adds c * (key factors); key must already be canonical.
  void add_term(const FactorKey& key, RationalFn c);

 private:
  std::map<FactorKey, RationalFn> terms_;
};

// Throws MalformedExpression unless every monomial has degree <= 1 in
// position symbols and <= 1 in spectral symbols.
void check_bilinear(const MultiPoly& exp_arg);

// Throws UnregisteredSymbol for an index outside the table.
void check_registered(Symbol s);

SymExpr differentiate(const SymExpr& e, Symbol s);
// Exact substitution s -> value. A power base may only be replaced by a bare
// symbol; a spectral symbol inside exponents only by an affine spectral form.
SymExpr substitute(const SymExpr& e, Symbol s, const MultiPoly& value);
SymExpr rename(const SymExpr& e, const std::map<Symbol, Symbol>& mapping);

// Leading form of a polynomial (sum of its maximal-degree monomials).
MultiPoly leading_term(const MultiPoly& p);

// Plain-text output, mainly for test diagnostics.
inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const AffineForm& a) { return os << a.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const RationalFn& f) { return os << f.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const SymExpr& e) { return os << e.to_string(); }

}  // namespace cmsba
