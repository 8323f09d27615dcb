#include "cmsba/ba/ba_result.hpp"

#include <algorithm>

#include "cmsba/error.hpp"

namespace cmsba {

std::string case_tag(BACase c) {
  switch (c) {
    case BACase::rational:
      return "rational";
    case BACase::trig:
      return "trig";
    case BACase::deformed_rational:
      return "def-rat";
    case BACase::deformed_trig:
      return "def-trig";
  }
  return "?";
}

BACase parse_case(const std::string& tag) {
  for (BACase c : {BACase::rational, BACase::trig, BACase::deformed_rational, BACase::deformed_trig})
    if (case_tag(c) == tag) return c;
  throw MalformedExpression("unknown case '" + tag + "'");
}

RationalFn BAResult::trace_product() const {
  RationalFn p(1);
  for (const auto& s : trace) p *= s.value;
  return p;
}

std::vector<RationalFn::Factor> vandermonde_list(std::span<const Symbol> a, int e) {
  std::vector<RationalFn::Factor> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      out.emplace_back(MultiPoly::variable(a[i]) - MultiPoly::variable(a[j]), e);
  return out;
}

std::vector<RationalFn::Factor> cross_list(std::span<const Symbol> a, std::span<const Symbol> b, int e) {
  std::vector<RationalFn::Factor> out;
  for (Symbol s : a)
    for (Symbol t : b) out.emplace_back(MultiPoly::variable(s) - MultiPoly::variable(t), e);
  return out;
}

std::optional<MultiPoly> clear_denominator(const RationalFn& c, const std::vector<RationalFn::Factor>& expected) {
  std::vector<RationalFn::Factor> monic;
  for (const auto& [f, e] : expected) {
    MultiPoly g = f.monic();
    auto it = std::find_if(monic.begin(), monic.end(), [&](const auto& p) { return p.first == g; });
    if (it == monic.end())
      monic.emplace_back(std::move(g), e);
    else
      it->second += e;
  }
  // Which scalar turns the expected product into its monic form.
  Rational scale = 1;
  for (const auto& [f, e] : expected)
    for (int i = 0; i < e; ++i) scale *= f.leading_coeff();
  MultiPoly out = c.num();
  std::vector<bool> used(monic.size(), false);
  for (const auto& [f, e] : c.den_factors()) {
    bool found = false;
    for (std::size_t i = 0; i < monic.size(); ++i) {
      if (used[i] || !(monic[i].first == f)) continue;
      if (monic[i].second < e) return std::nullopt;
      out = out * f.pow(static_cast<unsigned>(monic[i].second - e));
      used[i] = found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  for (std::size_t i = 0; i < monic.size(); ++i)
    if (!used[i]) out = out * monic[i].first.pow(static_cast<unsigned>(monic[i].second));
  return out * scale;
}

MultiPoly coefficient_of(const MultiPoly& p, std::span<const Symbol> syms, const std::vector<unsigned>& exps) {
  std::vector<MultiPoly::Term> out;
  for (const auto& t : p.terms()) {
    bool match = true;
    for (std::size_t i = 0; i < syms.size() && match; ++i) match = t.mono.exps[syms[i].index] == exps[i];
    if (!match) continue;
    MultiPoly::Term rest = t;
    for (Symbol s : syms) rest.mono.exps[s.index] = 0;
    out.push_back(std::move(rest));
  }
  return MultiPoly::from_terms(std::move(out));
}

}  // namespace cmsba
