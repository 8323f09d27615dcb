#include "cmsba/ba/rational.hpp"

#include <map>
#include <mutex>

#include "cmsba/error.hpp"

namespace cmsba {

namespace {

MultiPoly var(Symbol s) { return MultiPoly::variable(s); }

Rational factorial(int m) {
  Rational f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

std::string truncated(const std::string& s, std::size_t n = 400) {
  return s.size() <= n ? s : s.substr(0, n) + "...";
}

nlohmann::json nm(const BAResult& r) {
  return {{"case", case_tag(r.kind)}, {"n", r.n}, {"m", r.m}};
}

}  // namespace

VerifyReport symbolic_report(std::string id, nlohmann::json params, const SymExpr& residual) {
  VerifyReport r;
  r.check_id = std::move(id);
  r.parameters = std::move(params);
  r.pass = residual.is_zero();
  r.residual = r.pass ? 0.0 : 1.0;
  r.tolerance = 0.0;
  r.detail = r.pass ? "residual identically zero" : "nonzero residual: " + truncated(residual.to_string());
  return r;
}

BAResult ba_base(int m) {
  BAResult r;
  r.kind = BACase::rational;
  r.n = 1;
  r.m = r.m_star = m;
  r.positions = {x_sym(1)};
  r.spectral = {lambda_sym(1)};
  r.expr = SymExpr::exp(var(lambda_sym(1)) * var(x_sym(1)));
  return r;
}

RankIntegrand raise_rank_integrand(const BAResult& prev, int m) {
  if (prev.kind != BACase::rational) throw ConstructionError("raise_rank expects a rational BA function");
  if (prev.n > 1 && prev.m != m) throw ConstructionError("mixed multiplicities in the rank recursion");
  if (m < 1) throw ConstructionError("multiplicity must be positive");
  const int k = prev.n;
  auto x = family("x", k + 1);
  auto z = family("z", k);
  auto lam = family("lambda", k + 1, SymbolKind::spectral);
  for (Symbol s : z)
    if (prev.expr.contains(s)) throw ConstructionError("integration variable already present in the input");

  std::map<Symbol, Symbol> to_z;
  for (int i = 0; i < k; ++i) to_z[x[i]] = z[i];
  SymExpr psi_z = rename(prev.expr, to_z);

  MultiPoly az(1);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) az = az * (var(z[i]) - var(z[j])).pow(static_cast<unsigned>(m + 1));
  RationalFn weight = RationalFn::factored(az, cross_list(z, x, m + 1));
  MultiPoly exp_arg;
  for (Symbol s : x) exp_arg += var(lam[k]) * var(s);
  for (Symbol s : z) exp_arg -= var(lam[k]) * var(s);

  RankIntegrand out;
  out.integrand = psi_z * SymExpr::term(weight, exp_arg);
  for (int i = 0; i < k; ++i) out.plan.push_back({z[i], var(x[i]), m + 1});
  out.outside = RationalFn::factored(MultiPoly(1), vandermonde_list(x, -(m + 1)));
  std::vector<RationalFn::Factor> lam_diff;
  for (int i = 0; i < k; ++i) lam_diff.emplace_back(var(lam[i]) - var(lam[k]), -m);
  // A(z)^(m+1) against the orientation of the residue cycle.
  Rational fk = ((m + 1) * k * (k - 1) / 2) % 2 ? -1 : 1;
  for (int i = 0; i < k; ++i) fk *= factorial(m);
  out.constant = RationalFn::factored(MultiPoly(1 / fk), lam_diff);
  for (auto& f : lam_diff) f.second = -f.second;
  out.inverse_constant = RationalFn::factored(MultiPoly(fk), lam_diff);
  return out;
}

BAResult raise_rank(const BAResult& prev, int m) {
  RankIntegrand in = raise_rank_integrand(prev, m);
  SymExpr raw = iterated_residue(in.integrand, in.plan).scaled(in.outside);
  BAResult r;
  r.kind = BACase::rational;
  r.n = prev.n + 1;
  r.m = r.m_star = m;
  r.positions = family("x", r.n);
  r.spectral = family("lambda", r.n, SymbolKind::spectral);
  r.trace = {{"C1(k=" + std::to_string(prev.n) + ")", in.constant}};
  r.expr = raw.scaled(in.inverse_constant);
  for (Symbol s : family("z", prev.n))
    if (r.expr.contains(s)) throw ConstructionError("integration variable survived the residues");
  auto P = rational_P(r);
  if (!P) throw ConstructionError("result is not of the form P/(A(x)^m A(λ)^m) exp(λ,x)");
  MultiPoly lead = product(vandermonde_factors(r.positions), m) * product(vandermonde_factors(r.spectral), m);
  if (!(leading_term(*P) == lead)) throw ConstructionError("leading term of P differs from A(x)^m A(λ)^m");
  return r;
}

BAResult ba_rational(int n, int m) {
  if (n < 1 || m < 1) throw ConstructionError("ba_rational needs n >= 1 and m >= 1");
  static std::mutex mu;
  static std::map<std::pair<int, int>, BAResult> memo;
  std::lock_guard lock(mu);
  auto it = memo.find({n, m});
  if (it != memo.end()) return it->second;
  int k = n - 1;
  while (k > 1 && !memo.count({k, m})) --k;
  BAResult cur = k > 1 ? memo.at({k, m}) : ba_base(m);
  for (int j = cur.n; j < n; ++j) {
    cur = raise_rank(cur, m);
    memo.emplace(std::pair{cur.n, m}, cur);
  }
  if (n == 1) memo.emplace(std::pair{1, m}, cur);
  return cur;
}

BAResult operator_oracle_n2(int m) {
  if (m < 0) throw ConstructionError("operator oracle needs m >= 0");
  Symbol x1 = x_sym(1), x2 = x_sym(2);
  MultiPoly l1 = var(lambda_sym(1)), l2 = var(lambda_sym(2));
  SymExpr e = SymExpr::exp(l1 * var(x1) + l2 * var(x2));
  for (int j = 1; j <= m; ++j) {
    SymExpr d = differentiate(e, x1) - differentiate(e, x2);
    e = d - e.scaled(RationalFn::fraction(MultiPoly(2 * j), var(x1) - var(x2)));
  }
  BAResult r;
  r.n = 2;
  r.m = r.m_star = m;
  r.positions = {x1, x2};
  r.spectral = {lambda_sym(1), lambda_sym(2)};
  RationalFn scale = RationalFn::factored(MultiPoly(1), {{l1 - l2, -m}});
  r.trace = {{"(λ1-λ2)^m", scale}};
  r.expr = e.scaled(RationalFn::factored(MultiPoly(1), {{l1 - l2, m}}));
  return r;
}

SymExpr psi3_nested(int m) {
  if (m < 1) throw ConstructionError("psi3_nested needs m >= 1");
  auto x = family("x", 3);
  auto lam = family("lambda", 3, SymbolKind::spectral);
  Symbol z1 = z_sym(1), z2 = z_sym(2), w = symbol("s");
  MultiPoly Z1 = var(z1), Z2 = var(z2), W = var(w);
  std::vector<RationalFn::Factor> den = {{W - Z1, m + 1}, {W - Z2, m + 1}};
  for (Symbol zi : {z1, z2})
    for (Symbol xj : x) den.emplace_back(var(zi) - var(xj), m + 1);
  RationalFn coeff = RationalFn::factored((Z1 - Z2).pow(static_cast<unsigned>(2 * m + 2)), den);
  MultiPoly exp_arg = (var(lam[1]) - var(lam[2])) * (Z1 + Z2) + (var(lam[0]) - var(lam[1])) * W;
  SymExpr integrand = SymExpr::term(coeff, exp_arg);
  ResiduePlan plan = {{w, Z1, m + 1}, {z2, var(x[1]), m + 1}, {z1, var(x[0]), m + 1}};
  SymExpr res = iterated_residue(integrand, plan);

  Rational f3 = factorial(m) * factorial(m) * factorial(m) * ((m + 1) % 2 ? -1 : 1);
  std::vector<RationalFn::Factor> c = vandermonde_list(x, -(m + 1));
  auto lv = vandermonde_list(lam, m);
  c.insert(c.end(), lv.begin(), lv.end());
  MultiPoly xbar = var(x[0]) + var(x[1]) + var(x[2]);
  return res * SymExpr::term(RationalFn::factored(MultiPoly(f3), c), var(lam[2]) * xbar);
}

SymExpr apply_calogero_moser(const SymExpr& e, int n, int m) {
  auto x = family("x", n);
  SymExpr out;
  for (Symbol s : x) out -= differentiate(differentiate(e, s), s);
  if (m != 0) {
    RationalFn pot;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        pot += RationalFn::factored(MultiPoly(2 * m * (m + 1)), {{var(x[i]) - var(x[j]), 2}});
    out += e.scaled(pot);
  }
  return out;
}

std::optional<MultiPoly> rational_P(const BAResult& r) {
  if (r.expr.size() != 1) return std::nullopt;
  const auto& [key, coeff] = r.expr.single_term();
  MultiPoly expected_exp;
  for (int i = 0; i < r.n; ++i) expected_exp += var(r.spectral[i]) * var(r.positions[i]);
  if (!(key.exp_arg == expected_exp) || !key.powers.empty()) return std::nullopt;
  auto f = vandermonde_list(std::span(r.positions).first(r.n), r.m);
  auto g = vandermonde_list(std::span(r.spectral).first(r.n), r.m);
  f.insert(f.end(), g.begin(), g.end());
  return clear_denominator(coeff, f);
}

VerifyReport verify_schrodinger(const BAResult& r) {
  Stopwatch sw;
  MultiPoly ll;
  for (int i = 0; i < r.n; ++i) ll += var(r.spectral[i]).pow(2);
  SymExpr residual = apply_calogero_moser(r.expr, r.n, r.m) + r.expr.scaled(ll);
  VerifyReport rep = symbolic_report("schrodinger", nm(r), residual);
  sw.stamp(rep);
  return rep;
}

VerifyReport verify_symmetry(const BAResult& r) {
  Stopwatch sw;
  std::map<Symbol, Symbol> swap;
  for (int i = 0; i < r.n; ++i) {
    swap[r.positions[i]] = r.spectral[i];
    swap[r.spectral[i]] = r.positions[i];
  }
  VerifyReport rep = symbolic_report("symmetry", nm(r), rename(r.expr, swap) - r.expr);
  sw.stamp(rep);
  return rep;
}

VerifyReport verify_leading_term(const BAResult& r) {
  Stopwatch sw;
  VerifyReport rep;
  rep.check_id = "leading";
  rep.parameters = nm(r);
  auto P = rational_P(r);
  if (!P) {
    rep.pass = false;
    rep.residual = 1;
    rep.detail = "coefficient times A(x)^m A(λ)^m is not a polynomial";
  } else {
    MultiPoly lead = product(vandermonde_factors(std::span(r.positions).first(r.n)), r.m) *
                     product(vandermonde_factors(std::span(r.spectral).first(r.n)), r.m);
    MultiPoly diff = leading_term(*P) - lead;
    rep.pass = diff.is_zero() && P->total_degree() == static_cast<unsigned>(r.m * r.n * (r.n - 1));
    rep.residual = rep.pass ? 0 : 1;
    rep.detail = "deg P = " + std::to_string(P->total_degree()) + (diff.is_zero() ? "" : ", leading form differs");
  }
  sw.stamp(rep);
  return rep;
}

}  // namespace cmsba
