#include "cmsba/symcore/gcd.hpp"

#include <algorithm>

#include "cmsba/error.hpp"

namespace cmsba {

namespace {

MultiPoly exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw MalformedExpression("internal: inexact division in gcd");
  return *std::move(q);
}

MultiPoly leading_coeff_in(const MultiPoly& p, Symbol s) { return p.coefficients_in(s).back(); }

std::optional<Symbol> main_symbol(const MultiPoly& a, const MultiPoly& b) {
  std::optional<Symbol> best;
  for (const auto* p : {&a, &b})
    for (auto s : p->symbols())
      if (!best || s.index < best->index) best = s;
  return best;
}

MultiPoly primitive_part(const MultiPoly& p, Symbol s) {
  MultiPoly c = content_in(p, s);
  return c.is_constant() ? p : exact(p, c);
}

}  // namespace

MultiPoly content_in(const MultiPoly& p, Symbol s) {
  if (p.is_zero()) return {};
  MultiPoly g;
  for (const auto& c : p.coefficients_in(s)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return MultiPoly(1);
  }
  return g;
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, Symbol s) {
  unsigned da = a.degree_in(s), db = b.degree_in(s);
  if (b.is_zero()) throw MalformedExpression("pseudo-remainder by zero");
  if (da < db) return a;
  MultiPoly lb = leading_coeff_in(b, s);
  int e = static_cast<int>(da - db) + 1;
  MultiPoly r = a;
  while (!r.is_zero() && r.degree_in(s) >= db) {
    unsigned dr = r.degree_in(s);
    MultiPoly lr = leading_coeff_in(r, s);
    MultiPoly shift = lr * MultiPoly::monomial(Monomial::of(s, dr - db));
    r = lb * r - shift * b;
    --e;
  }
  if (e > 0) r = r * lb.pow(static_cast<unsigned>(e));
  return r;
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MultiPoly(1);
  if (a == b) return a.monic();
  // Cheap exits: one divides the other.
  if (a.size() <= b.size()) {
    if (divide_exact(b, a)) return a.monic();
  } else if (divide_exact(a, b)) {
    return b.monic();
  }

  Symbol v = *main_symbol(a, b);
  if (!a.contains(v)) return gcd(a, content_in(b, v));
  if (!b.contains(v)) return gcd(content_in(a, v), b);

  MultiPoly ca = content_in(a, v), cb = content_in(b, v);
  MultiPoly c = gcd(ca, cb);
  MultiPoly pa = ca.is_constant() ? a : exact(a, ca);
  MultiPoly pb = cb.is_constant() ? b : exact(b, cb);
  // Scale to integer coefficients to keep the PRS tidy.
  pa = pa * (1 / pa.content_q());
  pb = pb * (1 / pb.content_q());
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

  MultiPoly g(1), h(1);
  MultiPoly A = pa, B = pb;
  while (true) {
    unsigned d = A.degree_in(v) - B.degree_in(v);
    MultiPoly R = pseudo_remainder(A, B, v);
    if (R.is_zero()) break;
    if (!R.contains(v)) {
      B = MultiPoly(1);
      break;
    }
    A = B;
    B = exact(R, g * h.pow(d));
    g = leading_coeff_in(A, v);
    if (d == 0) {
      // h unchanged
    } else if (d == 1) {
      h = g;
    } else {
      h = exact(g.pow(d), h.pow(d - 1));
    }
  }
  MultiPoly result = B.is_constant() ? MultiPoly(1) : primitive_part(B, v);
  return (c * result).monic();
}

}  // namespace cmsba
