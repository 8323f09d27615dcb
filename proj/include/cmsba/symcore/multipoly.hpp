#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cmsba/symcore/var_table.hpp"

namespace cmsba {

using Rational = mpq_class;

// Parses "p/q" or "p". Throws MalformedExpression.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// Dense exponent vector over the global VarTable.
struct Monomial {
  std::array<std::uint8_t, kMaxSymbols> exps{};

  static Monomial of(Symbol s, unsigned degree = 1);

  unsigned degree() const;
  unsigned degree_in(Symbol s) const { return exps[s.index]; }
  bool is_one() const;
  bool divides(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);
// Exact quotient; caller guarantees b divides a.
Monomial operator/(const Monomial& a, const Monomial& b);

// Graded lexicographic: total degree first, then lexicographic with the
// lowest symbol index most significant. Returns <0, 0, >0.
int grlex_compare(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept sorted by strictly decreasing grlex order with no zeros, so
// equality is structural.
class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  MultiPoly() = default;
  MultiPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  MultiPoly(int c) : MultiPoly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static MultiPoly variable(Symbol s);
  static MultiPoly monomial(const Monomial& m, const Rational& c = 1);
  // Arbitrary order, duplicates summed.
  static MultiPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // precondition: is_constant()
  unsigned total_degree() const;     // 0 for the zero polynomial
  unsigned degree_in(Symbol s) const;
  unsigned low_degree_in(Symbol s) const;  // lowest power of s among terms
  bool contains(Symbol s) const;
  std::vector<Symbol> symbols() const;
  // Total degree restricted to the given symbols.
  unsigned degree_in(std::span<const Symbol> syms) const;

  const Term& leading() const { return terms_.front(); }
  const Rational& leading_coeff() const { return terms_.front().coeff; }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator*(MultiPoly a, int c) { return a *= Rational(c); }
  friend MultiPoly operator*(int c, MultiPoly a) { return a *= Rational(c); }
  MultiPoly mul_monomial(const Monomial& m, const Rational& c) const;
  MultiPoly pow(unsigned e) const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  // Total order on polynomials (term-by-term), used to sort factor lists.
  friend bool operator<(const MultiPoly& a, const MultiPoly& b);

  MultiPoly derivative(Symbol s) const;
  MultiPoly substitute(Symbol s, const MultiPoly& value) const;
  MultiPoly rename(const std::map<Symbol, Symbol>& mapping) const;
  // Coefficients of s^0, s^1, ..., s^deg; each free of s.
  std::vector<MultiPoly> coefficients_in(Symbol s) const;
  static MultiPoly from_coefficients(Symbol s, const std::vector<MultiPoly>& coeffs);

  // The sum of all monomials of maximal total degree (optionally restricted
  // to a subset of symbols). Throws MalformedExpression on zero.
  MultiPoly leading_form() const;
  MultiPoly leading_form(std::span<const Symbol> syms) const;

  // Scaled so the leading coefficient is 1.
  MultiPoly monic() const;
  // Least common multiple of the coefficient denominators divided by gcd of numerators.
  Rational content_q() const;

  bool is_linear() const { return !is_zero() && total_degree() == 1; }

  // Evaluation modulo the Mersenne prime 2^61-1 (denominators must be invertible).
  std::optional<std::uint64_t> eval_mod(std::span<const std::uint64_t> values) const;

  std::string to_string() const;
  std::string to_latex() const;

 private:
  std::vector<Term> terms_;
  friend class PolyBuilder;
};

MultiPoly pow(const MultiPoly& p, unsigned e);

// Exact quotient a / b, or nullopt if b does not divide a.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);

// Product forms used throughout: A(a) = prod_{i<j}(a_i - a_j),
// A(a,b) = prod_{i,j}(a_i - b_j). Returned as linear factor lists.
std::vector<MultiPoly> vandermonde_factors(std::span<const Symbol> a);
std::vector<MultiPoly> cross_factors(std::span<const Symbol> a, std::span<const Symbol> b);
MultiPoly product(std::span<const MultiPoly> factors, unsigned power = 1);

std::uint64_t mod_p_prime();

}  // namespace cmsba
