#include "cmsba/symcore/multipoly.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <unordered_map>

#include "cmsba/error.hpp"

namespace cmsba {

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(r & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(r >> 61);
  std::uint64_t s = lo + hi;
  if (s >= kPrime) s -= kPrime;
  return s;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_mod_p(const mpz_class& z) {
  static const mpz_class p = []() -> mpz_class {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, 61);
    return v - 1;
  }();
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), p.get_mpz_t());
  return static_cast<std::uint64_t>(mpz_get_ui(r.get_mpz_t()));
}

bool term_greater(const MultiPoly::Term& a, const MultiPoly::Term& b) {
  return grlex_compare(a.mono, b.mono) > 0;
}

// Merge two sorted term lists with sign on the second.
std::vector<MultiPoly::Term> merge(const std::vector<MultiPoly::Term>& a,
                                   const std::vector<MultiPoly::Term>& b, bool subtract) {
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = grlex_compare(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rational s = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (sgn(s) != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (subtract) out.back().coeff = -out.back().coeff;
  }
  return out;
}

}  // namespace

std::uint64_t mod_p_prime() { return kPrime; }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(s));
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw MalformedExpression("zero denominator in rational '" + s + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw MalformedExpression("bad rational literal '" + s + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

Monomial Monomial::of(Symbol s, unsigned degree) {
  Monomial m;
  if (degree > 255) throw MalformedExpression("monomial degree overflow");
  m.exps[s.index] = static_cast<std::uint8_t>(degree);
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto e : exps) d += e;
  return d;
}

bool Monomial::is_one() const {
  for (auto e : exps)
    if (e) return false;
  return true;
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxSymbols; ++i)
    if (exps[i] > other.exps[i]) return false;
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    unsigned e = unsigned{a.exps[i]} + b.exps[i];
    if (e > 255) throw MalformedExpression("monomial degree overflow");
    m.exps[i] = static_cast<std::uint8_t>(e);
  }
  return m;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxSymbols; ++i)
    m.exps[i] = static_cast<std::uint8_t>(a.exps[i] - b.exps[i]);
  return m;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db ? 1 : -1;
  return std::memcmp(a.exps.data(), b.exps.data(), kMaxSymbols);
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto e : m.exps) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

MultiPoly::MultiPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

MultiPoly MultiPoly::variable(Symbol s) { return monomial(Monomial::of(s), 1); }

MultiPoly MultiPoly::monomial(const Monomial& m, const Rational& c) {
  MultiPoly p;
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  MultiPoly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().coeff) == 0) p.terms_.pop_back();
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return 0;
  return terms_[0].coeff;
}

unsigned MultiPoly::total_degree() const { return terms_.empty() ? 0 : terms_[0].mono.degree(); }

unsigned MultiPoly::degree_in(Symbol s) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono.exps[s.index]);
  return d;
}

unsigned MultiPoly::low_degree_in(Symbol s) const {
  unsigned d = 255;
  for (const auto& t : terms_) d = std::min<unsigned>(d, t.mono.exps[s.index]);
  return terms_.empty() ? 0 : d;
}

unsigned MultiPoly::degree_in(std::span<const Symbol> syms) const {
  unsigned d = 0;
  for (const auto& t : terms_) {
    unsigned e = 0;
    for (auto s : syms) e += t.mono.exps[s.index];
    d = std::max(d, e);
  }
  return d;
}

bool MultiPoly::contains(Symbol s) const {
  for (const auto& t : terms_)
    if (t.mono.exps[s.index]) return true;
  return false;
}

std::vector<Symbol> MultiPoly::symbols() const {
  std::array<bool, kMaxSymbols> seen{};
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < kMaxSymbols; ++i)
      if (t.mono.exps[i]) seen[i] = true;
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < kMaxSymbols; ++i)
    if (seen[i]) out.push_back(Symbol{static_cast<std::uint16_t>(i)});
  return out;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

MultiPoly MultiPoly::mul_monomial(const Monomial& m, const Rational& c) const {
  MultiPoly p;
  if (sgn(c) == 0) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
  return p;  // monomial multiplication preserves grlex order
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const MultiPoly& big = a.size() >= b.size() ? a : b;
  const MultiPoly& small = a.size() >= b.size() ? b : a;
  if (small.size() <= 12) {
    MultiPoly acc;
    for (const auto& t : small.terms_) acc += big.mul_monomial(t.mono, t.coeff);
    return acc;
  }
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(big.size() * 4);
  Rational tmp;
  for (const auto& s : small.terms_)
    for (const auto& t : big.terms_) {
      tmp = s.coeff * t.coeff;
      auto [it, inserted] = acc.try_emplace(s.mono * t.mono, tmp);
      if (!inserted) it->second += tmp;
    }
  std::vector<MultiPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) terms.push_back({m, std::move(c)});
  return MultiPoly::from_terms(std::move(terms));
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result(1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

MultiPoly pow(const MultiPoly& p, unsigned e) { return p.pow(e); }

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

bool operator<(const MultiPoly& a, const MultiPoly& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = grlex_compare(a.terms_[i].mono, b.terms_[i].mono);
    if (c != 0) return c < 0;
    if (a.terms_[i].coeff != b.terms_[i].coeff) return a.terms_[i].coeff < b.terms_[i].coeff;
  }
  return a.terms_.size() < b.terms_.size();
}

MultiPoly MultiPoly::derivative(Symbol s) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.mono.exps[s.index];
    if (!e) continue;
    Term d{t.mono, t.coeff * e};
    d.mono.exps[s.index] = static_cast<std::uint8_t>(e - 1);
    out.push_back(std::move(d));
  }
  return from_terms(std::move(out));
}

std::vector<MultiPoly> MultiPoly::coefficients_in(Symbol s) const {
  std::vector<MultiPoly> out(degree_in(s) + 1);
  if (terms_.empty()) return {MultiPoly{}};
  for (const auto& t : terms_) {
    unsigned e = t.mono.exps[s.index];
    Term r = t;
    r.mono.exps[s.index] = 0;
    out[e].terms_.push_back(std::move(r));  // order within a bucket is preserved
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(Symbol s, const std::vector<MultiPoly>& coeffs) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms_) {
      Term r = t;
      if (r.mono.exps[s.index] != 0) throw MalformedExpression("coefficient contains the variable");
      if (k > 255) throw MalformedExpression("monomial degree overflow");
      r.mono.exps[s.index] = static_cast<std::uint8_t>(k);
      terms.push_back(std::move(r));
    }
  return from_terms(std::move(terms));
}

MultiPoly MultiPoly::substitute(Symbol s, const MultiPoly& value) const {
  if (!contains(s)) return *this;
  auto coeffs = coefficients_in(s);
  MultiPoly result = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    result = result * value;
    result += coeffs[k];
  }
  return result;
}

MultiPoly MultiPoly::rename(const std::map<Symbol, Symbol>& mapping) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term r{Monomial{}, t.coeff};
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
      if (!t.mono.exps[i]) continue;
      Symbol src{static_cast<std::uint16_t>(i)};
      auto it = mapping.find(src);
      Symbol dst = it == mapping.end() ? src : it->second;
      unsigned e = unsigned{r.mono.exps[dst.index]} + t.mono.exps[i];
      if (e > 255) throw MalformedExpression("monomial degree overflow");
      r.mono.exps[dst.index] = static_cast<std::uint8_t>(e);
    }
    out.push_back(std::move(r));
  }
  return from_terms(std::move(out));
}

MultiPoly MultiPoly::leading_form() const {
  if (terms_.empty()) throw MalformedExpression("leading term of the zero polynomial");
  unsigned d = total_degree();
  MultiPoly p;
  for (const auto& t : terms_) {
    if (t.mono.degree() != d) break;
    p.terms_.push_back(t);
  }
  return p;
}

MultiPoly MultiPoly::leading_form(std::span<const Symbol> syms) const {
  if (terms_.empty()) throw MalformedExpression("leading term of the zero polynomial");
  unsigned d = degree_in(syms);
  MultiPoly p;
  for (const auto& t : terms_) {
    unsigned e = 0;
    for (auto s : syms) e += t.mono.exps[s.index];
    if (e == d) p.terms_.push_back(t);
  }
  return p;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / terms_[0].coeff;
  return *this * inv;
}

Rational MultiPoly::content_q() const {
  if (terms_.empty()) return 1;
  mpz_class g = 0, l = 1;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(g, l);
  c.canonicalize();
  return c;
}

std::optional<std::uint64_t> MultiPoly::eval_mod(std::span<const std::uint64_t> values) const {
  std::uint64_t acc = 0;
  for (const auto& t : terms_) {
    std::uint64_t den = reduce_mod_p(t.coeff.get_den());
    if (den == 0) return std::nullopt;
    std::uint64_t c = mulmod(reduce_mod_p(t.coeff.get_num()), powmod(den, kPrime - 2));
    for (std::size_t i = 0; i < kMaxSymbols; ++i)
      if (t.mono.exps[i]) c = mulmod(c, powmod(values[i], t.mono.exps[i]));
    acc += c;
    if (acc >= kPrime) acc -= kPrime;
  }
  return acc;
}

namespace {

std::string render(const MultiPoly& p, bool latex) {
  if (p.is_zero()) return "0";
  const auto& table = VarTable::global();
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    bool unit = c == 1 && !t.mono.is_one();
    if (!unit) {
      if (latex && c.get_den() != 1)
        os << "\\frac{" << c.get_num() << "}{" << c.get_den() << "}";
      else
        os << c;
    }
    bool need_sep = !unit;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
      unsigned e = t.mono.exps[i];
      if (!e) continue;
      Symbol s{static_cast<std::uint16_t>(i)};
      if (latex) {
        os << (need_sep ? " " : "") << table.latex_name(s);
        if (e > 1) os << "^{" << e << "}";
      } else {
        os << (need_sep ? "*" : "") << table.display_name(s);
        if (e > 1) os << "^" << e;
      }
      need_sep = true;
    }
  }
  return os.str();
}

}  // namespace

std::string MultiPoly::to_string() const { return render(*this, false); }
std::string MultiPoly::to_latex() const { return render(*this, true); }

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw MalformedExpression("division by the zero polynomial");
  if (a.is_zero()) return MultiPoly{};
  if (b.is_constant()) return a * (1 / b.constant_value());
  if (b.total_degree() > a.total_degree()) return std::nullopt;
  if (b.is_linear()) {
    // b = c*v + rest with v the leading symbol and rest free of v.
    const auto& lead = b.leading();
    Symbol v{};
    for (std::size_t i = 0; i < kMaxSymbols; ++i)
      if (lead.mono.exps[i]) v = Symbol{static_cast<std::uint16_t>(i)};
    MultiPoly rest = b - MultiPoly::monomial(lead.mono, lead.coeff);
    if (!rest.contains(v)) {
      MultiPoly root = -rest * (1 / lead.coeff);  // b = c*(v - root)
      auto coeffs = a.coefficients_in(v);
      std::size_t d = coeffs.size() - 1;
      if (d == 0) return std::nullopt;
      std::vector<MultiPoly> q(d);
      q[d - 1] = coeffs[d];
      for (std::size_t k = d - 1; k-- > 0;) q[k] = coeffs[k + 1] + root * q[k + 1];
      MultiPoly remainder = coeffs[0] + root * q[0];
      if (!remainder.is_zero()) return std::nullopt;
      return MultiPoly::from_coefficients(v, q) * (1 / lead.coeff);
    }
  }
  std::vector<MultiPoly::Term> quotient;
  MultiPoly r = a;
  const auto& lb = b.leading();
  while (!r.is_zero()) {
    const auto& lr = r.leading();
    if (!lb.mono.divides(lr.mono)) return std::nullopt;
    Monomial m = lr.mono / lb.mono;
    Rational c = lr.coeff / lb.coeff;
    quotient.push_back({m, c});
    r -= b.mul_monomial(m, c);
  }
  return MultiPoly::from_terms(std::move(quotient));
}

std::vector<MultiPoly> vandermonde_factors(std::span<const Symbol> a) {
  std::vector<MultiPoly> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      out.push_back(MultiPoly::variable(a[i]) - MultiPoly::variable(a[j]));
  return out;
}

std::vector<MultiPoly> cross_factors(std::span<const Symbol> a, std::span<const Symbol> b) {
  std::vector<MultiPoly> out;
  for (auto ai : a)
    for (auto bj : b) out.push_back(MultiPoly::variable(ai) - MultiPoly::variable(bj));
  return out;
}

MultiPoly product(std::span<const MultiPoly> factors, unsigned power) {
  MultiPoly p(1);
  for (const auto& f : factors) p = p * f.pow(power);
  return p;
}

}  // namespace cmsba
