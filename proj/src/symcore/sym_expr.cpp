#include "cmsba/symcore/sym_expr.hpp"

#include <sstream>

#include "cmsba/error.hpp"

namespace cmsba {

const AffineForm* FactorKey::power_of(Symbol s) const {
  for (const auto& [b, e] : powers)
    if (b == s) return &e;
  return nullptr;
}

bool operator<(const FactorKey& a, const FactorKey& b) {
  if (!(a.exp_arg == b.exp_arg)) return a.exp_arg < b.exp_arg;
  return a.powers < b.powers;
}

void check_registered(Symbol s) {
  if (s.index >= VarTable::global().size())
    throw UnregisteredSymbol("symbol index " + std::to_string(s.index) + " is not registered");
}

void check_bilinear(const MultiPoly& exp_arg) {
  const auto& table = VarTable::global();
  for (const auto& t : exp_arg.terms()) {
    unsigned pos = 0, spec = 0;
    for (std::size_t i = 0; i < kMaxSymbols; ++i) {
      if (!t.mono.exps[i]) continue;
      if (table.kind(Symbol{static_cast<std::uint16_t>(i)}) == SymbolKind::position)
        pos += t.mono.exps[i];
      else
        spec += t.mono.exps[i];
    }
    if (pos > 1 || spec > 1)
      throw MalformedExpression("exponential argument is not bilinear: " + exp_arg.to_string());
  }
}

namespace {

void check_power(Symbol base, const AffineForm& e) {
  const auto& table = VarTable::global();
  if (table.kind(base) != SymbolKind::position)
    throw MalformedExpression("power base must be a position symbol");
  for (const auto& [s, c] : e.linear())
    if (table.kind(s) != SymbolKind::spectral)
      throw MalformedExpression("power exponents may only involve spectral symbols");
}

}  // namespace

SymExpr::SymExpr(RationalFn c) {
  if (!c.is_zero()) terms_.emplace(FactorKey{}, std::move(c));
}
SymExpr::SymExpr(const MultiPoly& p) : SymExpr(RationalFn(p)) {}
SymExpr::SymExpr(const Rational& c) : SymExpr(RationalFn(c)) {}
SymExpr::SymExpr(int c) : SymExpr(RationalFn(c)) {}

SymExpr SymExpr::term(RationalFn coeff, MultiPoly exp_arg, PowerMap powers) {
  check_bilinear(exp_arg);
  std::map<Symbol, AffineForm> merged;
  for (auto& [b, e] : powers) {
    check_power(b, e);
    merged[b] += e;
  }
  FactorKey key{std::move(exp_arg), {}};
  std::vector<RationalFn::Factor> shifts;
  for (auto& [b, e] : merged) {
    auto [k, rest] = e.split_integer();
    if (k != 0) shifts.emplace_back(MultiPoly::variable(b), static_cast<int>(-k));
    if (!rest.is_zero()) key.powers.emplace_back(b, std::move(rest));
  }
  if (!shifts.empty()) coeff *= RationalFn::factored(MultiPoly(1), shifts);
  SymExpr out;
  out.add_term(key, std::move(coeff));
  return out;
}

SymExpr SymExpr::exp(const MultiPoly& arg) { return term(RationalFn(1), arg); }

SymExpr SymExpr::power(Symbol base, const AffineForm& exponent) {
  return term(RationalFn(1), MultiPoly{}, {{base, exponent}});
}

void SymExpr::add_term(const FactorKey& key, RationalFn c) {
  if (c.is_zero()) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, std::move(c));
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool SymExpr::contains(Symbol s) const {
  for (const auto& [k, c] : terms_) {
    if (c.contains(s) || k.exp_arg.contains(s) || k.power_of(s)) return true;
    for (const auto& [b, e] : k.powers)
      if (sgn(e.coefficient(s)) != 0) return true;
  }
  return false;
}

const std::pair<const FactorKey, RationalFn>& SymExpr::single_term() const {
  if (terms_.size() != 1)
    throw MalformedExpression("expected a single-term expression, found " +
                              std::to_string(terms_.size()) + " terms");
  return *terms_.begin();
}

SymExpr SymExpr::operator-() const {
  SymExpr out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

SymExpr& SymExpr::operator+=(const SymExpr& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

SymExpr& SymExpr::operator-=(const SymExpr& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

SymExpr operator*(const SymExpr& a, const SymExpr& b) {
  SymExpr out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      PowerMap powers = ka.powers;
      powers.insert(powers.end(), kb.powers.begin(), kb.powers.end());
      out += SymExpr::term(ca * cb, ka.exp_arg + kb.exp_arg, std::move(powers));
    }
  return out;
}

SymExpr& SymExpr::operator*=(const SymExpr& o) { return *this = *this * o; }

bool operator==(const SymExpr& a, const SymExpr& b) {
  if (a.terms_.size() != b.terms_.size()) return (a - b).is_zero();
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return (a - b).is_zero();
    if (!(ia->second == ib->second)) return false;
  }
  return true;
}

SymExpr SymExpr::scaled(const RationalFn& c) const {
  SymExpr out;
  for (const auto& [k, v] : terms_) out.add_term(k, v * c);
  return out;
}

namespace {

std::string render_key(const FactorKey& k, bool latex) {
  std::ostringstream os;
  const auto& table = VarTable::global();
  if (!k.exp_arg.is_zero()) {
    if (latex)
      os << "\\exp\\left(" << k.exp_arg.to_latex() << "\\right)";
    else
      os << "exp(" << k.exp_arg.to_string() << ")";
  }
  for (const auto& [b, e] : k.powers) {
    if (os.tellp() > 0) os << (latex ? " " : "*");
    if (latex)
      os << table.latex_name(b) << "^{" << e.to_latex() << "}";
    else
      os << table.display_name(b) << "^(" << e.to_string() << ")";
  }
  return os.str();
}

std::string render(const std::map<FactorKey, RationalFn>& terms, bool latex) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms) {
    if (!first) os << " + ";
    first = false;
    std::string factors = render_key(k, latex);
    std::string coeff = latex ? c.to_latex() : c.to_string();
    if (factors.empty()) {
      os << coeff;
    } else if (latex) {
      os << "\\left(" << coeff << "\\right) " << factors;
    } else {
      os << "(" << coeff << ")*" << factors;
    }
  }
  return os.str();
}

}  // namespace

std::string SymExpr::to_string() const { return render(terms_, false); }
std::string SymExpr::to_latex() const { return render(terms_, true); }

SymExpr differentiate(const SymExpr& e, Symbol s) {
  check_registered(s);
  SymExpr out;
  RationalFn inv_s = RationalFn::factored(MultiPoly(1), {{MultiPoly::variable(s), 1}});
  for (const auto& [k, c] : e.terms()) {
    RationalFn d = c.derivative(s);
    MultiPoly dexp = k.exp_arg.derivative(s);
    if (!dexp.is_zero()) d += c * RationalFn(dexp);
    if (const AffineForm* a = k.power_of(s)) d += c * RationalFn(a->to_poly()) * inv_s;
    out.add_term(k, std::move(d));
  }
  return out;
}

SymExpr substitute(const SymExpr& e, Symbol s, const MultiPoly& value) {
  check_registered(s);
  bool spectral = VarTable::global().kind(s) == SymbolKind::spectral;
  SymExpr out;
  for (const auto& [k, c] : e.terms()) {
    MultiPoly exp_arg = k.exp_arg.substitute(s, value);
    PowerMap powers;
    for (const auto& [b, ex] : k.powers) {
      Symbol base = b;
      if (b == s) {
        if (value.size() != 1 || value.leading().coeff != 1 || value.total_degree() != 1)
          throw MalformedExpression("power base may only be renamed to another symbol");
        base = value.symbols().front();
      }
      AffineForm exponent = ex;
      if (spectral && sgn(ex.coefficient(s)) != 0)
        exponent = ex.substitute(s, AffineForm::from_poly(value));
      powers.emplace_back(base, std::move(exponent));
    }
    out += SymExpr::term(c.substitute(s, value), std::move(exp_arg), std::move(powers));
  }
  return out;
}

SymExpr rename(const SymExpr& e, const std::map<Symbol, Symbol>& mapping) {
  SymExpr out;
  for (const auto& [k, c] : e.terms()) {
    PowerMap powers;
    for (const auto& [b, ex] : k.powers) {
      auto it = mapping.find(b);
      powers.emplace_back(it == mapping.end() ? b : it->second, ex.rename(mapping));
    }
    out += SymExpr::term(c.rename(mapping), k.exp_arg.rename(mapping), std::move(powers));
  }
  return out;
}

MultiPoly leading_term(const MultiPoly& p) { return p.leading_form(); }

}  // namespace cmsba
