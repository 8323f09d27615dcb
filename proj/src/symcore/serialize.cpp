#include "cmsba/symcore/serialize.hpp"

#include <set>

#include "cmsba/error.hpp"

namespace cmsba {

using nlohmann::json;

namespace {

void collect(const MultiPoly& p, std::set<Symbol>& out) {
  for (Symbol s : p.symbols()) out.insert(s);
}

struct Encoder {
  std::map<Symbol, int> local;

  json poly(const MultiPoly& p) const {
    json terms = json::array();
    for (const auto& t : p.terms()) {
      json mono = json::array();
      for (std::size_t i = 0; i < kMaxSymbols; ++i)
        if (t.mono.exps[i]) mono.push_back({local.at(Symbol{static_cast<std::uint16_t>(i)}), t.mono.exps[i]});
      terms.push_back({mono, to_string(t.coeff)});
    }
    return terms;
  }

  json affine(const AffineForm& a) const {
    json lin = json::array();
    for (const auto& [s, c] : a.linear()) lin.push_back({local.at(s), to_string(c)});
    return {{"const", to_string(a.constant())}, {"linear", lin}};
  }
};

struct Decoder {
  std::vector<Symbol> global;

  Symbol sym(const json& j) const {
    auto i = j.get<long>();
    if (i < 0 || static_cast<std::size_t>(i) >= global.size())
      throw MalformedExpression("symbol reference out of range");
    return global[static_cast<std::size_t>(i)];
  }

  MultiPoly poly(const json& j) const {
    std::vector<MultiPoly::Term> terms;
    for (const auto& t : j) {
      Monomial m;
      for (const auto& pair : t.at(0)) {
        auto d = pair.at(1).get<long>();
        if (d <= 0 || d > 255) throw MalformedExpression("bad monomial degree");
        m.exps[sym(pair.at(0)).index] = static_cast<std::uint8_t>(d);
      }
      terms.push_back({m, parse_rational(t.at(1).get<std::string>())});
    }
    return MultiPoly::from_terms(std::move(terms));
  }

  AffineForm affine(const json& j) const {
    AffineForm a(parse_rational(j.at("const").get<std::string>()));
    for (const auto& pair : j.at("linear"))
      a += AffineForm::of(sym(pair.at(0)), parse_rational(pair.at(1).get<std::string>()));
    return a;
  }
};

}  // namespace

json to_json(const SymExpr& e) {
  std::set<Symbol> used;
  for (const auto& [k, c] : e.terms()) {
    collect(c.num(), used);
    for (const auto& [f, x] : c.den_factors()) collect(f, used);
    collect(k.exp_arg, used);
    for (const auto& [b, a] : k.powers) {
      used.insert(b);
      for (const auto& [s, q] : a.linear()) used.insert(s);
    }
  }
  Encoder enc;
  json vars = json::array();
  const auto& table = VarTable::global();
  for (Symbol s : used) {
    enc.local[s] = static_cast<int>(vars.size());
    vars.push_back({{"name", table.name(s)},
                    {"kind", table.kind(s) == SymbolKind::position ? "position" : "spectral"}});
  }
  json terms = json::array();
  for (const auto& [k, c] : e.terms()) {
    json den = json::array();
    for (const auto& [f, x] : c.den_factors()) den.push_back({enc.poly(f), x});
    json powers = json::array();
    for (const auto& [b, a] : k.powers) powers.push_back({enc.local.at(b), enc.affine(a)});
    terms.push_back({{"coeff", {{"num", enc.poly(c.num())}, {"den", den}}},
                     {"exp", enc.poly(k.exp_arg)},
                     {"powers", powers}});
  }
  return {{"vars", vars}, {"terms", terms}};
}

SymExpr from_json(const json& j) {
  try {
    Decoder dec;
    for (const auto& v : j.at("vars")) {
      auto kind = v.at("kind").get<std::string>();
      if (kind != "position" && kind != "spectral") throw MalformedExpression("unknown symbol kind " + kind);
      dec.global.push_back(VarTable::global().intern(
          v.at("name").get<std::string>(), kind == "position" ? SymbolKind::position : SymbolKind::spectral));
    }
    SymExpr out;
    for (const auto& t : j.at("terms")) {
      std::vector<RationalFn::Factor> den;
      for (const auto& f : t.at("coeff").at("den")) {
        int e = f.at(1).get<int>();
        if (e <= 0) throw MalformedExpression("denominator exponent must be positive");
        den.emplace_back(dec.poly(f.at(0)), e);
      }
      RationalFn c = RationalFn::factored(dec.poly(t.at("coeff").at("num")), den);
      PowerMap powers;
      for (const auto& p : t.at("powers")) powers.emplace_back(dec.sym(p.at(0)), dec.affine(p.at(1)));
      out += SymExpr::term(std::move(c), dec.poly(t.at("exp")), std::move(powers));
    }
    return out;
  } catch (const json::exception& ex) {
    throw MalformedExpression(std::string("bad expression JSON: ") + ex.what());
  }
}

std::string serialize(const SymExpr& e) { return to_json(e).dump(); }

SymExpr deserialize(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw MalformedExpression(std::string("bad expression JSON: ") + ex.what());
  }
  return from_json(j);
}

}  // namespace cmsba
