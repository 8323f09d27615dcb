#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cmsba/symcore/multipoly.hpp"

namespace cmsba {

// constant + sum_k c_k * s_k over spectral symbols. Sparse, structural equality.
class AffineForm {
 public:
  AffineForm() = default;
  AffineForm(const Rational& c) : constant_(c) {}  // NOLINT(google-explicit-constructor)
  AffineForm(int c) : constant_(c) {}              // NOLINT(google-explicit-constructor)
  static AffineForm of(Symbol s, const Rational& c = 1);
  // Throws MalformedExpression if p is not of degree <= 1.
  static AffineForm from_poly(const MultiPoly& p);

  const Rational& constant() const { return constant_; }
  const std::vector<std::pair<Symbol, Rational>>& linear() const { return linear_; }
  Rational coefficient(Symbol s) const;
  bool is_zero() const { return sgn(constant_) == 0 && linear_.empty(); }
  bool is_constant() const { return linear_.empty(); }

  AffineForm& operator+=(const AffineForm& o);
  AffineForm& operator-=(const AffineForm& o);
  AffineForm& operator*=(const Rational& c);
  friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
  friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
  friend AffineForm operator*(AffineForm a, const Rational& c) { return a *= c; }
  AffineForm operator-() const { return *this * Rational(-1); }
  friend bool operator==(const AffineForm& a, const AffineForm& b);
  friend bool operator<(const AffineForm& a, const AffineForm& b);

  // floor(constant) and the remainder form with constant in [0, 1).
  std::pair<long, AffineForm> split_integer() const;

  MultiPoly to_poly() const;
  AffineForm substitute(Symbol s, const AffineForm& value) const;
  AffineForm rename(const std::map<Symbol, Symbol>& mapping) const;
  std::string to_string() const;
  std::string to_latex() const;

 private:
  Rational constant_;
  std::vector<std::pair<Symbol, Rational>> linear_;  // sorted, no zeros
};

// Generalized binomial coefficient (a choose r) = a(a-1)...(a-r+1)/r!.
MultiPoly binomial(const AffineForm& a, unsigned r);

}  // namespace cmsba
