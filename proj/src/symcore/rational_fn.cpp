#include "cmsba/symcore/rational_fn.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "cmsba/error.hpp"
#include "cmsba/symcore/gcd.hpp"

namespace cmsba {

namespace {

// Fixed pseudo-random evaluation point (mod 2^61-1) used to rule out
// divisibility by a linear factor without a full division.
const std::array<std::uint64_t, kMaxSymbols>& probe_point() {
  static const auto point = [] {
    std::array<std::uint64_t, kMaxSymbols> p{};
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    for (auto& v : p) {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      v = state % mod_p_prime();
    }
    return p;
  }();
  return point;
}

// False only when f certainly does not divide num.
bool may_divide_linear(const MultiPoly& num, const MultiPoly& f) {
  if (num.size() < 24) return true;
  const auto& lead = f.leading();
  std::size_t v = 0;
  for (std::size_t i = 0; i < kMaxSymbols; ++i)
    if (lead.mono.exps[i]) v = i;
  MultiPoly rest = f - MultiPoly::monomial(lead.mono, lead.coeff);
  MultiPoly root = -rest * (1 / lead.coeff);
  auto point = probe_point();
  auto r = root.eval_mod(point);
  if (!r) return true;
  point[v] = *r;
  auto val = num.eval_mod(point);
  return !val || *val == 0;
}

// Monic version of f and the scalar c with f = c * monic.
std::pair<MultiPoly, Rational> split_scalar(const MultiPoly& f) {
  Rational c = f.leading_coeff();
  return {f * (1 / c), c};
}

Rational pow_q(const Rational& c, int e) {
  Rational r = 1;
  Rational b = e >= 0 ? c : Rational(1 / c);
  for (int i = 0; i < std::abs(e); ++i) r *= b;
  return r;
}

}  // namespace

RationalFn RationalFn::fraction(const MultiPoly& num, const MultiPoly& den) {
  if (den.is_zero()) throw MalformedExpression("zero denominator");
  return factored(num, {{den, 1}});
}

RationalFn RationalFn::factored(MultiPoly num, const std::vector<Factor>& factors) {
  RationalFn r;
  r.num_ = std::move(num);
  for (const auto& [f, e] : factors) {
    if (e == 0) continue;
    if (f.is_zero()) {
      if (e > 0) throw MalformedExpression("zero denominator");
      r.num_ = MultiPoly{};
      continue;
    }
    if (f.is_constant()) {
      r.num_ *= pow_q(f.constant_value(), -e);
      continue;
    }
    if (e < 0) {
      r.num_ = r.num_ * f.pow(static_cast<unsigned>(-e));
      continue;
    }
    auto [m, c] = split_scalar(f);
    r.num_ *= pow_q(c, -e);
    r.den_.emplace_back(std::move(m), e);
  }
  if (r.num_.is_zero()) {
    r.den_.clear();
    return r;
  }
  r.sort_factors();
  r.cancel();
  return r;
}

void RationalFn::sort_factors() {
  std::sort(den_.begin(), den_.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
  std::vector<Factor> merged;
  for (auto& f : den_) {
    if (!merged.empty() && merged.back().first == f.first)
      merged.back().second += f.second;
    else
      merged.push_back(std::move(f));
  }
  den_ = std::move(merged);
}

void RationalFn::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  bool resort = false;
  std::vector<Factor> work = std::move(den_);
  std::vector<Factor> done;
  while (!work.empty()) {
    Factor f = std::move(work.back());
    work.pop_back();
    if (f.first.is_linear()) {
      while (f.second > 0 && may_divide_linear(num_, f.first)) {
        auto q = divide_exact(num_, f.first);
        if (!q) break;
        num_ = *std::move(q);
        --f.second;
      }
      if (f.second > 0) done.push_back(std::move(f));
      continue;
    }
    MultiPoly g = gcd(num_, f.first);
    if (g.is_constant()) {
      done.push_back(std::move(f));
      continue;
    }
    num_ = *divide_exact(num_, g);
    MultiPoly h = *divide_exact(f.first, g);
    auto [hm, hc] = split_scalar(h);
    if (!hm.is_constant()) work.emplace_back(std::move(hm), f.second);
    num_ *= pow_q(hc, -f.second);
    // g keeps f's exponent less the copy already cancelled.
    if (f.second > 1) work.emplace_back(g, f.second - 1);
    resort = true;
  }
  den_ = std::move(done);
  if (resort || den_.size() > 1) sort_factors();
}

MultiPoly RationalFn::den() const {
  MultiPoly d(1);
  for (const auto& [f, e] : den_) d = d * f.pow(static_cast<unsigned>(e));
  return d;
}

bool RationalFn::contains(Symbol s) const {
  if (num_.contains(s)) return true;
  for (const auto& f : den_)
    if (f.first.contains(s)) return true;
  return false;
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn& RationalFn::operator+=(const RationalFn& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    cancel();
    return *this;
  }
  // Common denominator: exponent-wise max over the union of factors.
  std::vector<Factor> common;
  MultiPoly lift_a(1), lift_b(1);
  std::size_t i = 0, j = 0;
  while (i < den_.size() || j < o.den_.size()) {
    bool take_a = j >= o.den_.size() || (i < den_.size() && den_[i].first < o.den_[j].first);
    bool take_b = i >= den_.size() || (j < o.den_.size() && o.den_[j].first < den_[i].first);
    if (take_a) {
      lift_b = lift_b * den_[i].first.pow(static_cast<unsigned>(den_[i].second));
      common.push_back(den_[i++]);
    } else if (take_b) {
      lift_a = lift_a * o.den_[j].first.pow(static_cast<unsigned>(o.den_[j].second));
      common.push_back(o.den_[j++]);
    } else {
      int ea = den_[i].second, eb = o.den_[j].second;
      if (ea < eb) lift_a = lift_a * den_[i].first.pow(static_cast<unsigned>(eb - ea));
      if (eb < ea) lift_b = lift_b * den_[i].first.pow(static_cast<unsigned>(ea - eb));
      common.emplace_back(den_[i].first, std::max(ea, eb));
      ++i;
      ++j;
    }
  }
  num_ = num_ * lift_a + o.num_ * lift_b;
  den_ = std::move(common);
  cancel();
  return *this;
}

RationalFn& RationalFn::operator-=(const RationalFn& o) { return *this += -o; }

RationalFn& RationalFn::operator*=(const RationalFn& o) {
  if (is_zero() || o.is_zero()) {
    num_ = MultiPoly{};
    den_.clear();
    return *this;
  }
  num_ = num_ * o.num_;
  if (!o.den_.empty()) {
    den_.insert(den_.end(), o.den_.begin(), o.den_.end());
    sort_factors();
  }
  cancel();
  return *this;
}

RationalFn RationalFn::inverse() const {
  if (is_zero()) throw MalformedExpression("inverse of zero");
  std::vector<Factor> f;
  f.emplace_back(num_, 1);
  MultiPoly n(1);
  for (const auto& [g, e] : den_) n = n * g.pow(static_cast<unsigned>(e));
  return factored(std::move(n), f);
}

RationalFn& RationalFn::operator/=(const RationalFn& o) { return *this *= o.inverse(); }

RationalFn RationalFn::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RationalFn r(1);
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

bool operator==(const RationalFn& a, const RationalFn& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return (a - b).is_zero();
}

RationalFn RationalFn::derivative(Symbol s) const {
  MultiPoly dn = num_.derivative(s);
  std::vector<std::size_t> hit;
  for (std::size_t i = 0; i < den_.size(); ++i)
    if (den_[i].first.contains(s)) hit.push_back(i);
  if (hit.empty()) {
    RationalFn r;
    r.num_ = std::move(dn);
    r.den_ = den_;
    r.cancel();
    return r;
  }
  // d(N / prod f^e) = (N' prod f - N sum e f' prod_{g != f} g) / (prod f^e * prod f)
  MultiPoly all(1);
  for (auto i : hit) all = all * den_[i].first;
  MultiPoly result = dn * all;
  for (auto i : hit) {
    MultiPoly others(1);
    for (auto j : hit)
      if (j != i) others = others * den_[j].first;
    result -= num_ * den_[i].first.derivative(s) * others * Rational(den_[i].second);
  }
  RationalFn r;
  r.num_ = std::move(result);
  r.den_ = den_;
  for (auto i : hit) r.den_[i].second += 1;
  r.cancel();
  return r;
}

RationalFn RationalFn::substitute(Symbol s, const MultiPoly& value) const {
  if (!contains(s)) return *this;
  std::vector<Factor> f;
  f.reserve(den_.size());
  for (const auto& [g, e] : den_) {
    MultiPoly gs = g.substitute(s, value);
    if (gs.is_zero()) throw MalformedExpression("substitution makes a denominator vanish");
    f.emplace_back(std::move(gs), e);
  }
  return factored(num_.substitute(s, value), f);
}

RationalFn RationalFn::rename(const std::map<Symbol, Symbol>& mapping) const {
  std::vector<Factor> f;
  for (const auto& [g, e] : den_) f.emplace_back(g.rename(mapping), e);
  return factored(num_.rename(mapping), f);
}

namespace {

std::string wrap(const std::string& s, bool needs) { return needs ? "(" + s + ")" : s; }

}  // namespace

std::string RationalFn::to_string() const {
  std::string n = num_.to_string();
  if (den_.empty()) return n;
  std::ostringstream os;
  os << wrap(n, num_.size() > 1) << "/(";
  for (std::size_t i = 0; i < den_.size(); ++i) {
    if (i) os << "*";
    os << "(" << den_[i].first.to_string() << ")";
    if (den_[i].second > 1) os << "^" << den_[i].second;
  }
  os << ")";
  return os.str();
}

std::string RationalFn::to_latex() const {
  std::string n = num_.to_latex();
  if (den_.empty()) return n;
  std::ostringstream os;
  os << "\\frac{" << n << "}{";
  for (const auto& [f, e] : den_) {
    os << "\\left(" << f.to_latex() << "\\right)";
    if (e > 1) os << "^{" << e << "}";
  }
  os << "}";
  return os.str();
}

RationalFn normalize(const MultiPoly& num, const MultiPoly& den) {
  return RationalFn::fraction(num, den);
}

RationalFn normalize(const RationalFn& r) {
  if (r.is_zero()) return r;
  return RationalFn::factored(r.num(), r.den_factors());
}

}  // namespace cmsba
