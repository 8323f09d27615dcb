#include "cmsba/symcore/affine.hpp"

#include <algorithm>
#include <sstream>

#include "cmsba/error.hpp"

namespace cmsba {

AffineForm AffineForm::of(Symbol s, const Rational& c) {
  AffineForm a;
  if (sgn(c) != 0) a.linear_.emplace_back(s, c);
  return a;
}

AffineForm AffineForm::from_poly(const MultiPoly& p) {
  if (p.total_degree() > 1) throw MalformedExpression("exponent is not affine: " + p.to_string());
  AffineForm a;
  for (const auto& t : p.terms()) {
    if (t.mono.is_one()) {
      a.constant_ = t.coeff;
      continue;
    }
    for (std::size_t i = 0; i < kMaxSymbols; ++i)
      if (t.mono.exps[i]) a += of(Symbol{static_cast<std::uint16_t>(i)}, t.coeff);
  }
  return a;
}

Rational AffineForm::coefficient(Symbol s) const {
  for (const auto& [sym, c] : linear_)
    if (sym == s) return c;
  return 0;
}

AffineForm& AffineForm::operator+=(const AffineForm& o) {
  constant_ += o.constant_;
  std::vector<std::pair<Symbol, Rational>> out;
  std::size_t i = 0, j = 0;
  while (i < linear_.size() || j < o.linear_.size()) {
    if (j >= o.linear_.size() || (i < linear_.size() && linear_[i].first < o.linear_[j].first)) {
      out.push_back(linear_[i++]);
    } else if (i >= linear_.size() || o.linear_[j].first < linear_[i].first) {
      out.push_back(o.linear_[j++]);
    } else {
      Rational c = linear_[i].second + o.linear_[j].second;
      if (sgn(c) != 0) out.emplace_back(linear_[i].first, c);
      ++i;
      ++j;
    }
  }
  linear_ = std::move(out);
  return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& o) { return *this += -o; }

AffineForm& AffineForm::operator*=(const Rational& c) {
  if (sgn(c) == 0) return *this = AffineForm{};
  constant_ *= c;
  for (auto& [s, k] : linear_) k *= c;
  return *this;
}

bool operator==(const AffineForm& a, const AffineForm& b) {
  return a.constant_ == b.constant_ && a.linear_ == b.linear_;
}

bool operator<(const AffineForm& a, const AffineForm& b) {
  if (a.constant_ != b.constant_) return a.constant_ < b.constant_;
  return a.linear_ < b.linear_;
}

std::pair<long, AffineForm> AffineForm::split_integer() const {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), constant_.get_num_mpz_t(), constant_.get_den_mpz_t());
  if (!fl.fits_slong_p()) throw MalformedExpression("exponent integer part too large");
  long k = fl.get_si();
  AffineForm rest = *this;
  rest.constant_ -= Rational(k);
  return {k, rest};
}

MultiPoly AffineForm::to_poly() const {
  MultiPoly p(constant_);
  for (const auto& [s, c] : linear_) p += MultiPoly::monomial(Monomial::of(s), c);
  return p;
}

AffineForm AffineForm::substitute(Symbol s, const AffineForm& value) const {
  Rational c = coefficient(s);
  if (sgn(c) == 0) return *this;
  AffineForm out = *this;
  out -= of(s, c);
  out += value * c;
  return out;
}

AffineForm AffineForm::rename(const std::map<Symbol, Symbol>& mapping) const {
  AffineForm out(constant_);
  for (const auto& [s, c] : linear_) {
    auto it = mapping.find(s);
    out += of(it == mapping.end() ? s : it->second, c);
  }
  return out;
}

std::string AffineForm::to_string() const { return to_poly().to_string(); }
std::string AffineForm::to_latex() const { return to_poly().to_latex(); }

MultiPoly binomial(const AffineForm& a, unsigned r) {
  MultiPoly p(1);
  MultiPoly base = a.to_poly();
  mpz_class fact = 1;
  for (unsigned i = 0; i < r; ++i) {
    p = p * (base - MultiPoly(Rational(static_cast<long>(i))));
    fact *= i + 1;
  }
  return p * Rational(1, fact);
}

}  // namespace cmsba
