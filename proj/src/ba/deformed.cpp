#include "cmsba/ba/deformed.hpp"

#include "cmsba/ba/rational.hpp"
#include "cmsba/ba/trig.hpp"
#include "cmsba/error.hpp"

namespace cmsba {

namespace {

MultiPoly var(Symbol s) { return MultiPoly::variable(s); }

Rational factorial(int m) {
  Rational f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

int check_negative(int n, int m) {
  if (n < 1) throw ConstructionError("deformed construction needs n >= 1");
  if (m >= 0) throw ConstructionError("the residue branch needs negative m; positive m is integral-only");
  return -m - 1;
}

int astar_sign(int n, int m_star) { return ((m_star + 1) * n * (n - 1) / 2) % 2 ? -1 : 1; }

std::vector<RationalFn::Factor> against(std::span<const Symbol> a, Symbol b, int e) {
  std::vector<RationalFn::Factor> out;
  for (Symbol s : a) out.emplace_back(var(s) - var(b), e);
  return out;
}

MultiPoly vandermonde_poly(std::span<const Symbol> a, int e) {
  return product(vandermonde_factors(a), static_cast<unsigned>(e));
}

MultiPoly against_poly(std::span<const Symbol> a, Symbol b) {
  MultiPoly p(1);
  for (Symbol s : a) p = p * (var(s) - var(b));
  return p;
}

Rational half(int k) { return Rational(k) / 2; }

bool is_trig(BACase c) { return c == BACase::deformed_trig; }

BAResult deformed_shell(BACase kind, int n, int m, int m_star) {
  BAResult r;
  r.kind = kind;
  r.n = n;
  r.m = m;
  r.m_star = m_star;
  bool t = is_trig(kind);
  r.positions = family(t ? "u" : "x", n);
  r.positions.push_back(t ? v_sym() : y_sym());
  r.spectral = family(t ? "nu" : "lambda", n, SymbolKind::spectral);
  r.spectral.push_back(mu_sym());
  return r;
}

// ν_i - μ + m*/2.
std::vector<RationalFn::Factor> trig_mu_list(std::span<const Symbol> nu, int m_star) {
  std::vector<RationalFn::Factor> out;
  for (Symbol s : nu) out.emplace_back(var(s) - var(mu_sym()) + half(m_star), 1);
  return out;
}

std::vector<RationalFn::Factor> expected_denominator(const BAResult& r) {
  const int n = r.n;
  auto pos = std::span(r.positions).first(n);
  auto spec = std::span(r.spectral).first(n);
  Symbol extra = r.positions[n];
  auto f = vandermonde_list(pos, r.m_star);
  auto g = against(pos, extra, 1);
  f.insert(f.end(), g.begin(), g.end());
  if (is_trig(r.kind)) {
    g = trig_normalizer_list(spec, r.m_star);
    f.insert(f.end(), g.begin(), g.end());
    g = trig_mu_list(spec, r.m_star);
  } else {
    g = vandermonde_list(spec, r.m_star);
    f.insert(f.end(), g.begin(), g.end());
    g = against(spec, mu_sym(), 1);
  }
  f.insert(f.end(), g.begin(), g.end());
  return f;
}

nlohmann::json params(const BAResult& r) {
  return {{"case", case_tag(r.kind)}, {"n", r.n}, {"m", r.m}, {"m*", r.m_star}};
}

}  // namespace

BAResult inner_rational(int n, int m_star) {
  if (m_star > 0) return ba_rational(n, m_star);
  BAResult r = ba_base(0);
  r.n = n;
  r.positions = family("x", n);
  r.spectral = family("lambda", n, SymbolKind::spectral);
  MultiPoly arg;
  for (int i = 0; i < n; ++i) arg += var(r.positions[i]) * var(r.spectral[i]);
  r.expr = SymExpr::exp(arg);
  return r;
}

BAResult inner_trig(int n, int m_star) {
  if (m_star > 0) return ba_trig(n, m_star);
  BAResult r = trig_base(0);
  r.n = n;
  r.positions = family("u", n);
  r.spectral = family("nu", n, SymbolKind::spectral);
  PowerMap p;
  for (int i = 0; i < n; ++i) p.emplace_back(r.positions[i], AffineForm::of(r.spectral[i]));
  r.expr = SymExpr::term(RationalFn(1), MultiPoly{}, p);
  return r;
}

DeformedIntegrand deformed_rational_integrand(int n, int m) {
  const int ms = check_negative(n, m);
  auto x = family("x", n);
  auto z = family("z", n);
  auto lam = family("lambda", n, SymbolKind::spectral);
  Symbol y = y_sym(), mu = mu_sym();

  std::map<Symbol, Symbol> to_z;
  for (int i = 0; i < n; ++i) to_z[x[i]] = z[i];
  SymExpr psi_z = rename(inner_rational(n, ms).expr, to_z);
  RationalFn weight = RationalFn::factored(vandermonde_poly(z, ms + 1) * against_poly(z, y), cross_list(z, x, ms + 1));
  MultiPoly exp_arg;
  for (int i = 0; i < n; ++i) exp_arg += var(mu) * (var(x[i]) - var(z[i]));

  DeformedIntegrand out;
  out.integrand = psi_z * SymExpr::term(weight, exp_arg);
  for (int i = 0; i < n; ++i) out.plan.push_back({z[i], var(x[i]), ms + 1});
  auto f = vandermonde_list(x, -(ms + 1));
  auto g = against(x, y, 1);
  f.insert(f.end(), g.begin(), g.end());
  out.outside = SymExpr::term(RationalFn::factored(MultiPoly(1), f), var(mu) * var(y) * (Rational(1) / m));
  out.sign = astar_sign(n, ms);
  Rational fk = 1;
  for (int i = 0; i < n; ++i) fk *= factorial(ms);
  out.constant = RationalFn::factored(MultiPoly(fk), against(lam, mu, ms));
  return out;
}

DeformedIntegrand deformed_trig_integrand(int n, int m, int w_shift) {
  const int ms = check_negative(n, m);
  auto u = family("u", n);
  auto w = family("w", n);
  auto nu = family("nu", n, SymbolKind::spectral);
  Symbol v = v_sym(), mu = mu_sym();

  std::map<Symbol, Symbol> to_w;
  for (int i = 0; i < n; ++i) to_w[u[i]] = w[i];
  SymExpr phi_w = rename(inner_trig(n, ms).expr, to_w);
  RationalFn weight = RationalFn::factored(vandermonde_poly(w, ms + 1) * against_poly(w, v), cross_list(w, u, ms + 1));
  PowerMap wpow;
  for (Symbol s : w) wpow.emplace_back(s, AffineForm(half(ms) + w_shift) - AffineForm::of(mu));

  DeformedIntegrand out;
  out.integrand = phi_w * SymExpr::term(weight, MultiPoly{}, wpow);
  for (int i = 0; i < n; ++i) out.plan.push_back({w[i], var(u[i]), ms + 1});
  PowerMap upow;
  for (Symbol s : u) upow.emplace_back(s, AffineForm::of(mu) + AffineForm(half(ms + 2)));
  upow.emplace_back(v, AffineForm::of(mu, Rational(1) / m));
  auto f = vandermonde_list(u, -(ms + 1));
  auto g = against(u, v, 1);
  f.insert(f.end(), g.begin(), g.end());
  out.outside = SymExpr::term(RationalFn::factored(MultiPoly(1), f), MultiPoly{}, upow);
  out.sign = astar_sign(n, ms);
  // 1 / prod binom(ν_i - μ + m*/2, m*).
  std::vector<RationalFn::Factor> bin;
  for (Symbol s : nu)
    for (int j = 0; j < ms; ++j) bin.emplace_back(var(s) - var(mu) + half(ms) - j, 1);
  Rational fk = 1;
  for (int i = 0; i < n; ++i) fk *= factorial(ms);
  out.constant = RationalFn::factored(MultiPoly(fk), bin);
  return out;
}

namespace {

BAResult finish(BACase kind, int n, int m, const DeformedIntegrand& in) {
  SymExpr raw = iterated_residue(in.integrand, in.plan) * in.outside;
  BAResult r = deformed_shell(kind, n, m, -m - 1);
  r.expr = raw.scaled(in.constant * RationalFn(in.sign));
  r.trace = {{"A* sign", RationalFn(in.sign)}, {"normalization", in.constant}};
  for (const auto& step : in.plan)
    if (r.expr.contains(step.var)) throw ConstructionError("integration variable survived the residues");
  if (!deformed_numerator(r)) throw ConstructionError("result does not have the expected deformed denominator");
  return r;
}

}  // namespace

BAResult deformed_rational_residue(int n, int m) {
  return finish(BACase::deformed_rational, n, m, deformed_rational_integrand(n, m));
}

BAResult deformed_trig_residue(int n, int m) {
  return finish(BACase::deformed_trig, n, m, deformed_trig_integrand(n, m));
}

SymExpr apply_deformed_operator(const SymExpr& e, int n, int m, BACase c) {
  const bool t = is_trig(c);
  auto x = family(t ? "u" : "x", n);
  Symbol y = t ? v_sym() : y_sym();
  // -∂² in x, or -4(u²∂² + u∂) in u = exp(2x).
  auto kinetic = [&](Symbol s) {
    SymExpr d = differentiate(e, s);
    if (!t) return -differentiate(d, s);
    RationalFn us = var(s);
    return -(differentiate(d, s).scaled(us * us) + d.scaled(us)).scaled(RationalFn(4));
  };
  SymExpr out;
  for (Symbol s : x) out += kinetic(s);
  out += kinetic(y).scaled(RationalFn(m));
  // 1/sinh²(a - b) = 4 ab / (a - b)² in exponential variables.
  auto inv_sq = [&](Symbol a, Symbol b, Rational c) {
    MultiPoly num = t ? var(a) * var(b) * (4 * c) : MultiPoly(c);
    return RationalFn::factored(num, {{var(a) - var(b), 2}});
  };
  RationalFn pot;
  if (m != 0 && m != -1)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pot += inv_sq(x[i], x[j], Rational(2 * m * (m + 1)));
  if (m != -1)
    for (Symbol s : x) pot += inv_sq(s, y, Rational(2 * (m + 1)));
  if (!pot.is_zero()) out += e.scaled(pot);
  return out;
}

RationalFn deformed_eigenvalue(int n, int m, BACase c) {
  auto lam = family(is_trig(c) ? "nu" : "lambda", n, SymbolKind::spectral);
  MultiPoly e = var(mu_sym()).pow(2) * (Rational(1) / m);
  for (Symbol s : lam) e += var(s).pow(2);
  return RationalFn(e * (is_trig(c) ? -4 : -1));
}

std::optional<MultiPoly> deformed_numerator(const BAResult& r) {
  if (r.expr.size() != 1) return std::nullopt;
  const auto& [key, coeff] = r.expr.single_term();
  const int n = r.n;
  Symbol extra = r.positions[n];
  if (is_trig(r.kind)) {
    if (!key.exp_arg.is_zero() || key.powers.size() != static_cast<std::size_t>(n + 1)) return std::nullopt;
    for (int i = 0; i < n; ++i) {
      auto p = key.power_of(r.positions[i]);
      if (!p || !(*p == AffineForm::of(r.spectral[i]))) return std::nullopt;
    }
    // The fractional part of μ/m only; integer shifts live in the coefficient.
    auto p = key.power_of(extra);
    if (!p || !(*p == AffineForm::of(mu_sym(), Rational(1) / r.m))) return std::nullopt;
  } else {
    MultiPoly arg = var(mu_sym()) * var(extra) * (Rational(1) / r.m);
    for (int i = 0; i < n; ++i) arg += var(r.spectral[i]) * var(r.positions[i]);
    if (!(key.exp_arg == arg) || !key.powers.empty()) return std::nullopt;
  }
  return clear_denominator(coeff, expected_denominator(r));
}

VerifyReport verify_deformed(const BAResult& r) {
  Stopwatch sw;
  RationalFn E = deformed_eigenvalue(r.n, r.m, r.kind);
  SymExpr residual = apply_deformed_operator(r.expr, r.n, r.m, r.kind) - r.expr.scaled(E);
  nlohmann::json p = params(r);
  p["eigenvalue"] = E.to_string();
  VerifyReport rep = symbolic_report("deformed-eigen", p, residual);
  rep.detail += "; E = " + E.to_string();
  sw.stamp(rep);
  return rep;
}

VerifyReport verify_deformed_structure(const BAResult& r) {
  Stopwatch sw;
  VerifyReport rep;
  rep.check_id = "deformed-structure";
  rep.parameters = params(r);
  auto P = deformed_numerator(r);
  if (!P) {
    rep.pass = false;
    rep.residual = 1;
    rep.detail = "factor or denominator shape differs";
    sw.stamp(rep);
    return rep;
  }
  const int n = r.n;
  auto pos = std::span(r.positions).first(n);
  auto spec = std::span(r.spectral).first(n);
  Symbol extra = r.positions[n];
  MultiPoly top = vandermonde_poly(pos, r.m_star) * against_poly(pos, extra) * vandermonde_poly(spec, r.m_star) *
                  against_poly(spec, mu_sym());
  bool lead_ok = leading_term(*P) == top;
  bool norm_ok = true;
  if (is_trig(r.kind)) {
    // Leading coefficient in the chamber u1 > ... > un > v.
    MultiPoly den(1);
    for (const auto& [f, e] : expected_denominator(r)) den = den * f.pow(static_cast<unsigned>(e));
    std::vector<Symbol> syms(pos.begin(), pos.end());
    syms.push_back(extra);
    std::vector<unsigned> ex;
    for (int i = 0; i < n; ++i) ex.push_back(static_cast<unsigned>(r.m_star * (n - 1 - i) + 1));
    ex.push_back(0);
    norm_ok = coefficient_of(*P, syms, ex) == coefficient_of(den, syms, ex);
  }
  rep.pass = lead_ok && norm_ok;
  rep.residual = rep.pass ? 0 : 1;
  rep.detail = std::string("leading form ") + (lead_ok ? "ok" : "differs");
  if (is_trig(r.kind)) rep.detail += std::string(", normalization ") + (norm_ok ? "ok" : "differs");
  sw.stamp(rep);
  return rep;
}

VerifyReport verify_deformed(int n, int m, BACase c) {
  if (c == BACase::deformed_rational) return verify_deformed(deformed_rational_residue(n, m));
  if (c == BACase::deformed_trig) return verify_deformed(deformed_trig_residue(n, m));
  throw ConstructionError("verify_deformed needs a deformed case");
}

}  // namespace cmsba
