#include "cmsba/symcore/series.hpp"

#include "cmsba/error.hpp"

namespace cmsba {

namespace {

using RSeries = LaurentSeries<RationalFn>;

// Shifted polynomial p(center + T) split into T-coefficients.
std::vector<MultiPoly> shifted_coeffs(const MultiPoly& p, Symbol var, const MultiPoly& shift, Symbol T) {
  if (!p.contains(var)) return {p};
  return p.substitute(var, shift).coefficients_in(T);
}

std::size_t low_index(const std::vector<MultiPoly>& c) {
  std::size_t k = 0;
  while (k < c.size() && c[k].is_zero()) ++k;
  return k;
}

// g(T)^alpha for g(0) != 0, alpha a negative integer power, first `len` coefficients.
// Miller's recurrence: g0 f_r = (1/r) sum_{j=1}^{r} ((alpha+1) j - r) g_j f_{r-j}.
RSeries power_series(const std::vector<MultiPoly>& g, int alpha, int len) {
  RSeries out(0, len - 1);
  if (len <= 0) return out;
  RationalFn inv_g0 = RationalFn::factored(MultiPoly(1), {{g[0], 1}});
  out.mutable_coeff(0) = RationalFn::factored(MultiPoly(1), {{g[0], -alpha}});
  for (int r = 1; r < len; ++r) {
    RationalFn acc;
    for (int j = 1; j <= r && j < static_cast<int>(g.size()); ++j) {
      if (g[j].is_zero()) continue;
      long w = static_cast<long>(alpha + 1) * j - r;
      if (w == 0) continue;
      acc += RationalFn(g[j] * Rational(w)) * out.coeff(r - j);
    }
    out.mutable_coeff(r) = acc * inv_g0 * RationalFn(Rational(1, r));
  }
  return out;
}

RSeries poly_series(const std::vector<MultiPoly>& c, std::size_t from, int len) {
  RSeries out(0, len - 1);
  for (int r = 0; r < len; ++r) {
    std::size_t k = from + static_cast<std::size_t>(r);
    if (k < c.size()) out.mutable_coeff(r) = RationalFn(c[k]);
  }
  return out;
}

RSeries exp_series(const MultiPoly& L, int len) {
  RSeries out(0, len - 1);
  MultiPoly p(1);
  Rational fact = 1;
  for (int r = 0; r < len; ++r) {
    if (r > 0) {
      p = p * L;
      fact *= r;
    }
    out.mutable_coeff(r) = RationalFn(p * Rational(1 / fact));
  }
  return out;
}

// (1 + T/s)^alpha.
RSeries binomial_series(Symbol s, const AffineForm& alpha, int len) {
  RSeries out(0, len - 1);
  MultiPoly sv = MultiPoly::variable(s);
  for (int r = 0; r < len; ++r)
    out.mutable_coeff(r) = RationalFn::factored(binomial(alpha, static_cast<unsigned>(r)), {{sv, r}});
  return out;
}

struct Prepared {
  int pole = 0;
  RationalFn outer;                          // factors free of var
  std::vector<MultiPoly> num;                // shifted numerator in T
  std::size_t num_low = 0;
  std::vector<std::pair<std::vector<MultiPoly>, int>> factors;  // shifted regular parts, exponent
  MultiPoly exp0, exp1;                      // exp argument = exp0 + T * exp1
  PowerMap powers;                           // with var's base replaced by the center symbol
  std::optional<std::pair<Symbol, AffineForm>> base_power;  // (center symbol, exponent)
};

Prepared prepare(const FactorKey& key, const RationalFn& c, Symbol var, const MultiPoly& center, Symbol T) {
  Prepared p;
  MultiPoly shift = T == var ? MultiPoly::variable(var) : center + MultiPoly::variable(T);
  std::vector<RationalFn::Factor> outer;
  for (const auto& [f, e] : c.den_factors()) {
    if (!f.contains(var)) {
      outer.emplace_back(f, e);
      continue;
    }
    auto g = shifted_coeffs(f, var, shift, T);
    std::size_t k = low_index(g);
    if (k == g.size()) throw MalformedExpression("denominator vanishes identically after shift");
    p.pole += e * static_cast<int>(k);
    g.erase(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(k));
    p.factors.emplace_back(std::move(g), e);
  }
  p.outer = RationalFn::factored(MultiPoly(1), outer);
  p.num = shifted_coeffs(c.num(), var, shift, T);
  p.num_low = low_index(p.num);
  p.pole -= static_cast<int>(p.num_low);

  auto ex = shifted_coeffs(key.exp_arg, var, shift, T);
  if (ex.size() > 2) throw MalformedExpression("exponential argument is not linear in the expansion variable");
  p.exp0 = ex.empty() ? MultiPoly{} : ex[0];
  p.exp1 = ex.size() > 1 ? ex[1] : MultiPoly{};

  for (const auto& [b, a] : key.powers) {
    if (sgn(a.coefficient(var)) != 0)
      throw UnsupportedSingularity("expansion variable appears in a power exponent");
    if (!(b == var)) {
      p.powers.emplace_back(b, a);
      continue;
    }
    if (center.is_zero() || T == var)
      throw UnsupportedSingularity("branch point of " + VarTable::global().name(b) + "^(" +
                                   a.to_string() + ") at the expansion center");
    auto syms = center.symbols();
    if (center.size() != 1 || center.total_degree() != 1 || center.leading_coeff() != 1)
      throw UnsupportedSingularity("power base expanded around a non-symbol center");
    p.base_power.emplace(syms.front(), a);
    p.powers.emplace_back(syms.front(), a);
  }
  return p;
}

}  // namespace

int pole_order(const SymExpr& e, Symbol var, const MultiPoly& center) {
  Symbol T = series_var();
  int best = 0;
  for (const auto& [k, c] : e.terms()) best = std::max(best, prepare(k, c, var, center, T).pole);
  return best;
}

LaurentSeries<SymExpr> series_expand_at(const SymExpr& e, Symbol var, const MultiPoly& center, int upto,
                                        std::optional<int> max_pole) {
  check_registered(var);
  Symbol T = (center.is_zero() && !(var == series_var())) ? var : series_var();
  if (var == series_var() && !center.is_zero())
    throw MalformedExpression("the reserved series symbol cannot be shifted");

  std::vector<Prepared> prepared;
  int lo = 0;
  for (const auto& [k, c] : e.terms()) {
    prepared.push_back(prepare(k, c, var, center, T));
    int pole = prepared.back().pole;
    if (max_pole && pole > *max_pole) throw PoleOrderExceeded(pole, *max_pole);
    lo = std::min(lo, -pole);
  }
  LaurentSeries<SymExpr> out(lo, upto);
  for (const auto& p : prepared) {
    int len = upto + p.pole + 1;
    if (len <= 0) continue;
    RSeries s = poly_series(p.num, p.num_low, len);
    for (const auto& [g, ex] : p.factors) s = s * power_series(g, -ex, len);
    if (!p.exp1.is_zero()) s = s * exp_series(p.exp1, len);
    if (p.base_power) s = s * binomial_series(p.base_power->first, p.base_power->second, len);
    for (int r = 0; r < len; ++r) {
      const RationalFn& c = s.coeff(r);
      if (c.is_zero()) continue;
      out.mutable_coeff(r - p.pole) += SymExpr::term(c * p.outer, p.exp0, p.powers);
    }
  }
  return out;
}

LaurentSeries<SymExpr> series_expand(const SymExpr& e, Symbol t, int upto) {
  return series_expand_at(e, t, MultiPoly{}, upto);
}

}  // namespace cmsba
