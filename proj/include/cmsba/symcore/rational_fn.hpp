#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cmsba/symcore/multipoly.hpp"

namespace cmsba {

// Quotient of multivariate polynomials over Q.
//
// The denominator is held as a sorted list of monic factors with positive
// exponents; the numerator carries every scalar. After any operation the
// numerator shares no factor with the denominator and the expanded
// denominator is monic. Linear factors (every denominator that arises in the
// constructions here) are cancelled by exact division; other factors go
// through the multivariate gcd.
class RationalFn {
 public:
  using Factor = std::pair<MultiPoly, int>;

  RationalFn() = default;
  RationalFn(const Rational& c) : num_(c) {}        // NOLINT(google-explicit-constructor)
  RationalFn(int c) : num_(Rational(c)) {}          // NOLINT(google-explicit-constructor)
  RationalFn(MultiPoly num) : num_(std::move(num)) {}  // NOLINT(google-explicit-constructor)

  // num/den reduced by gcd. Throws MalformedExpression on a zero denominator.
  static RationalFn fraction(const MultiPoly& num, const MultiPoly& den);
  // num * prod f^(-e). Exponents may be negative (the factor then multiplies
  // the numerator); factors need not be monic.
  static RationalFn factored(MultiPoly num, const std::vector<Factor>& factors);

  const MultiPoly& num() const { return num_; }
  MultiPoly den() const;
  const std::vector<Factor>& den_factors() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  bool contains(Symbol s) const;

  RationalFn operator-() const;
  RationalFn& operator+=(const RationalFn& o);
  RationalFn& operator-=(const RationalFn& o);
  RationalFn& operator*=(const RationalFn& o);
  RationalFn& operator/=(const RationalFn& o);
  friend RationalFn operator+(RationalFn a, const RationalFn& b) { return a += b; }
  friend RationalFn operator-(RationalFn a, const RationalFn& b) { return a -= b; }
  friend RationalFn operator*(RationalFn a, const RationalFn& b) { return a *= b; }
  friend RationalFn operator/(RationalFn a, const RationalFn& b) { return a /= b; }
  friend bool operator==(const RationalFn& a, const RationalFn& b);

  RationalFn inverse() const;
  RationalFn pow(int e) const;

  RationalFn derivative(Symbol s) const;
  RationalFn substitute(Symbol s, const MultiPoly& value) const;
  RationalFn rename(const std::map<Symbol, Symbol>& mapping) const;

  std::string to_string() const;
  std::string to_latex() const;

 private:
  void cancel();
  void sort_factors();
  MultiPoly num_;
  std::vector<Factor> den_;
};

// Canonical reduced form of a quotient. Throws MalformedExpression when the
// denominator is zero.
RationalFn normalize(const MultiPoly& num, const MultiPoly& den);
RationalFn normalize(const RationalFn& r);

}  // namespace cmsba
