#include "cmsba/ba/trig.hpp"

#include <map>
#include <mutex>

#include "cmsba/ba/rational.hpp"
#include "cmsba/error.hpp"

namespace cmsba {

namespace {

MultiPoly var(Symbol s) { return MultiPoly::variable(s); }

Rational factorial(int m) {
  Rational f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

nlohmann::json nm(const BAResult& r) {
  return {{"case", case_tag(r.kind)}, {"n", r.n}, {"m", r.m}};
}

}  // namespace

std::vector<RationalFn::Factor> trig_normalizer_list(std::span<const Symbol> nu, int m) {
  std::vector<RationalFn::Factor> out;
  for (int s = 1; s <= m; ++s)
    for (std::size_t i = 0; i < nu.size(); ++i)
      for (std::size_t j = i + 1; j < nu.size(); ++j) out.emplace_back(var(nu[i]) - var(nu[j]) - s, 1);
  return out;
}

BAResult trig_base(int m) {
  BAResult r;
  r.kind = BACase::trig;
  r.n = 1;
  r.m = r.m_star = m;
  r.positions = {u_sym(1)};
  r.spectral = {nu_sym(1)};
  r.expr = SymExpr::power(u_sym(1), AffineForm::of(nu_sym(1)));
  return r;
}

TrigRankIntegrand raise_rank_trig_integrand(const BAResult& prev, int m) {
  if (prev.kind != BACase::trig) throw ConstructionError("raise_rank_trig expects a trigonometric BA function");
  if (prev.n > 1 && prev.m != m) throw ConstructionError("mixed multiplicities in the rank recursion");
  if (m < 1) throw ConstructionError("multiplicity must be positive");
  const int k = prev.n;
  auto u = family("u", k + 1);
  auto w = family("w", k);
  auto nu = family("nu", k + 1, SymbolKind::spectral);
  for (Symbol s : w)
    if (prev.expr.contains(s)) throw ConstructionError("integration variable already present in the input");

  std::map<Symbol, Symbol> to_w;
  for (int i = 0; i < k; ++i) to_w[u[i]] = w[i];
  SymExpr phi_w = rename(prev.expr, to_w);

  MultiPoly aw(1);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) aw = aw * (var(w[i]) - var(w[j])).pow(static_cast<unsigned>(m + 1));
  RationalFn weight = RationalFn::factored(aw, cross_list(w, u, m + 1));
  PowerMap wpow;
  for (Symbol s : w) wpow.emplace_back(s, AffineForm(m) - AffineForm::of(nu[k]));

  TrigRankIntegrand out;
  out.integrand = phi_w * SymExpr::term(weight, MultiPoly{}, wpow);
  for (int i = 0; i < k; ++i) out.plan.push_back({w[i], var(u[i]), m + 1});
  PowerMap upow;
  for (Symbol s : u) upow.emplace_back(s, AffineForm::of(nu[k]));
  out.outside = SymExpr::term(RationalFn::factored(MultiPoly(1), vandermonde_list(u, -(m + 1))), MultiPoly{}, upow);
  // #{(i, j) : i > j} = k(k-1)/2 factors of A* carry a flipped sign.
  out.sign = ((m + 1) * k * (k - 1) / 2) % 2 ? -1 : 1;
  std::vector<RationalFn::Factor> bin;
  for (int i = 0; i < k; ++i)
    for (int s = 1; s <= m; ++s) bin.emplace_back(var(nu[i]) - var(nu[k]) - s, -1);
  Rational fk = 1;
  for (int i = 0; i < k; ++i) fk *= factorial(m);
  out.binomials = RationalFn::factored(MultiPoly(1 / fk), bin);
  for (auto& f : bin) f.second = 1;
  out.inverse_binomials = RationalFn::factored(MultiPoly(fk), bin);
  return out;
}

BAResult raise_rank_trig(const BAResult& prev, int m) {
  TrigRankIntegrand in = raise_rank_trig_integrand(prev, m);
  SymExpr raw = iterated_residue(in.integrand, in.plan) * in.outside;
  BAResult r;
  r.kind = BACase::trig;
  r.n = prev.n + 1;
  r.m = r.m_star = m;
  r.positions = family("u", r.n);
  r.spectral = family("nu", r.n, SymbolKind::spectral);
  std::string k = std::to_string(prev.n);
  r.trace = {{"A* sign(k=" + k + ")", RationalFn(in.sign)}, {"C(k=" + k + ")", in.binomials}};
  r.expr = raw.scaled(in.inverse_binomials * RationalFn(in.sign));
  for (Symbol s : family("w", prev.n))
    if (r.expr.contains(s)) throw ConstructionError("integration variable survived the residues");
  auto Q = trig_Q(r);
  if (!Q) throw ConstructionError("result is not of the form Q/(A(u)^m C_m(ν)) u^ν");
  MultiPoly lead = product(vandermonde_factors(r.positions), m) * product(vandermonde_factors(r.spectral), m);
  if (!(leading_term(*Q) == lead)) throw ConstructionError("leading term of Q differs from A(u)^m A(ν)^m");
  return r;
}

BAResult ba_trig(int n, int m) {
  if (n < 1 || m < 1) throw ConstructionError("ba_trig needs n >= 1 and m >= 1");
  static std::mutex mu;
  static std::map<std::pair<int, int>, BAResult> memo;
  std::lock_guard lock(mu);
  auto it = memo.find({n, m});
  if (it != memo.end()) return it->second;
  int k = n - 1;
  while (k > 1 && !memo.count({k, m})) --k;
  BAResult cur = k > 1 ? memo.at({k, m}) : trig_base(m);
  for (int j = cur.n; j < n; ++j) {
    cur = raise_rank_trig(cur, m);
    memo.emplace(std::pair{cur.n, m}, cur);
  }
  if (n == 1) memo.emplace(std::pair{1, m}, cur);
  return cur;
}

SymExpr apply_sutherland_u(const SymExpr& e, int n, int m) {
  auto u = family("u", n);
  SymExpr out;
  for (Symbol s : u) {
    SymExpr d = differentiate(e, s);
    RationalFn us = var(s);
    out -= (differentiate(d, s).scaled(us * us) + d.scaled(us)).scaled(RationalFn(4));
  }
  if (m != 0) {
    RationalFn pot;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        pot += RationalFn::factored(var(u[i]) * var(u[j]) * (8 * m * (m + 1)), {{var(u[i]) - var(u[j]), 2}});
    out += e.scaled(pot);
  }
  return out;
}

std::optional<MultiPoly> trig_Q(const BAResult& r) {
  if (r.expr.size() != 1) return std::nullopt;
  const auto& [key, coeff] = r.expr.single_term();
  if (!key.exp_arg.is_zero() || key.powers.size() != static_cast<std::size_t>(r.n)) return std::nullopt;
  for (int i = 0; i < r.n; ++i) {
    auto p = key.power_of(r.positions[i]);
    if (!p || !(*p == AffineForm::of(r.spectral[i]))) return std::nullopt;
  }
  auto f = vandermonde_list(std::span(r.positions).first(r.n), r.m);
  auto g = trig_normalizer_list(std::span(r.spectral).first(r.n), r.m);
  f.insert(f.end(), g.begin(), g.end());
  return clear_denominator(coeff, f);
}

VerifyReport verify_trig_eigen(const BAResult& r) {
  Stopwatch sw;
  MultiPoly nn;
  for (int i = 0; i < r.n; ++i) nn += var(r.spectral[i]).pow(2);
  SymExpr residual = apply_sutherland_u(r.expr, r.n, r.m) + r.expr.scaled(RationalFn(nn * 4));
  VerifyReport rep = symbolic_report("trig-eigen", nm(r), residual);
  sw.stamp(rep);
  return rep;
}

VerifyReport verify_trig_structure(const BAResult& r) {
  Stopwatch sw;
  VerifyReport rep;
  rep.check_id = "trig-structure";
  rep.parameters = nm(r);
  auto Q = trig_Q(r);
  if (!Q) {
    rep.pass = false;
    rep.residual = 1;
    rep.detail = "denominator does not divide A(u)^m C_m(ν)";
    sw.stamp(rep);
    return rep;
  }
  auto u = std::span(r.positions).first(r.n);
  auto nu = std::span(r.spectral).first(r.n);
  MultiPoly au = product(vandermonde_factors(u), r.m);
  bool lead_ok = leading_term(*Q) == au * product(vandermonde_factors(nu), r.m);
  MultiPoly cm(1);
  for (const auto& [f, e] : trig_normalizer_list(nu, r.m)) cm = cm * f;
  std::vector<unsigned> top;
  for (int i = 0; i < r.n; ++i) top.push_back(static_cast<unsigned>(r.m * (r.n - 1 - i)));
  bool norm_ok = coefficient_of(*Q, u, top) == coefficient_of(au * cm, u, top);
  rep.pass = lead_ok && norm_ok;
  rep.residual = rep.pass ? 0 : 1;
  rep.detail = std::string("leading form ") + (lead_ok ? "ok" : "differs") + ", normalization " +
               (norm_ok ? "ok" : "differs");
  sw.stamp(rep);
  return rep;
}

VerifyReport verify_trig_suite(int n, int m) {
  Stopwatch sw;
  BAResult r = ba_trig(n, m);
  VerifyReport a = verify_trig_eigen(r);
  VerifyReport b = verify_trig_structure(r);
  VerifyReport rep;
  rep.check_id = "trig-suite";
  rep.parameters = nm(r);
  rep.pass = a.pass && b.pass;
  rep.residual = std::max(a.residual, b.residual);
  rep.detail = "eigen: " + a.detail + "; " + b.detail;
  sw.stamp(rep);
  return rep;
}

}  // namespace cmsba
