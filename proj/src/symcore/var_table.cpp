#include "cmsba/symcore/var_table.hpp"

#include <mutex>

#include "cmsba/error.hpp"

namespace cmsba {

VarTable::VarTable() {
  // Fixed registration order for the standard families keeps canonical output
  // independent of which construction runs first.
  for (int i = 1; i <= 4; ++i) intern("x" + std::to_string(i), SymbolKind::position);
  for (int i = 1; i <= 4; ++i) intern("lambda" + std::to_string(i), SymbolKind::spectral);
  intern("y", SymbolKind::position);
  intern("mu", SymbolKind::spectral);
  for (int i = 1; i <= 4; ++i) intern("u" + std::to_string(i), SymbolKind::position);
  for (int i = 1; i <= 4; ++i) intern("nu" + std::to_string(i), SymbolKind::spectral);
  intern("v", SymbolKind::position);
  for (int i = 1; i <= 4; ++i) intern("z" + std::to_string(i), SymbolKind::position);
  for (int i = 1; i <= 4; ++i) intern("w" + std::to_string(i), SymbolKind::position);
  intern("s", SymbolKind::position);
  intern("_t", SymbolKind::position);
}

VarTable& VarTable::global() {
  static VarTable table;
  return table;
}

Symbol VarTable::intern(std::string_view name, SymbolKind kind) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
      if (entries_[it->second].kind != kind)
        throw MalformedExpression("symbol '" + std::string(name) +
                                  "' re-registered with a different kind");
      return Symbol{it->second};
    }
  }
  std::unique_lock lock(mutex_);
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
    if (entries_[it->second].kind != kind)
      throw MalformedExpression("symbol '" + std::string(name) +
                                "' re-registered with a different kind");
    return Symbol{it->second};
  }
  if (entries_.size() >= kMaxSymbols)
    throw MalformedExpression("symbol table full (" + std::to_string(kMaxSymbols) + ")");
  auto idx = static_cast<std::uint16_t>(entries_.size());
  entries_.push_back({std::string(name), kind});
  by_name_.emplace(std::string(name), idx);
  return Symbol{idx};
}

std::optional<Symbol> VarTable::find(std::string_view name) const {
  std::shared_lock lock(mutex_);
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) return Symbol{it->second};
  return std::nullopt;
}

Symbol VarTable::at(std::string_view name) const {
  if (auto s = find(name)) return *s;
  throw UnregisteredSymbol("unregistered symbol '" + std::string(name) + "'");
}

std::string VarTable::name(Symbol s) const {
  std::shared_lock lock(mutex_);
  if (s.index >= entries_.size()) throw UnregisteredSymbol("symbol index out of range");
  return entries_[s.index].name;
}

namespace {

// Greek-named families ("lambda2", "nu", "mu") rendered as symbols.
std::optional<std::string> greek(const std::string& n, bool latex) {
  static const struct {
    std::string_view ascii, text, tex;
  } table[] = {{"lambda", "λ", "\\lambda"}, {"nu", "ν", "\\nu"}, {"mu", "μ", "\\mu"}};
  std::string_view sv(n);
  for (const auto& g : table) {
    if (sv.substr(0, g.ascii.size()) != g.ascii) continue;
    std::string_view rest = sv.substr(g.ascii.size());
    bool digits = true;
    for (char c : rest) digits = digits && (c >= '0' && c <= '9');
    if (!digits) continue;
    if (latex) {
      std::string out(g.tex);
      if (!rest.empty()) out += "_{" + std::string(rest) + "}";
      return out;
    }
    return std::string(g.text) + std::string(rest);
  }
  return std::nullopt;
}

}  // namespace

std::string VarTable::display_name(Symbol s) const {
  std::string n = name(s);
  return greek(n, false).value_or(n);
}

std::string VarTable::latex_name(Symbol s) const {
  std::string n = name(s);
  if (auto g = greek(n, true)) return *g;
  std::size_t pos = n.size();
  while (pos > 0 && n[pos - 1] >= '0' && n[pos - 1] <= '9') --pos;
  if (pos == n.size() || pos == 0) return n;
  return n.substr(0, pos) + "_{" + n.substr(pos) + "}";
}

SymbolKind VarTable::kind(Symbol s) const {
  std::shared_lock lock(mutex_);
  if (s.index >= entries_.size()) throw UnregisteredSymbol("symbol index out of range");
  return entries_[s.index].kind;
}

std::size_t VarTable::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

Symbol symbol(std::string_view name, SymbolKind kind) {
  return VarTable::global().intern(name, kind);
}

Symbol indexed(std::string_view base, int i, SymbolKind kind) {
  return symbol(std::string(base) + std::to_string(i), kind);
}

Symbol mu_sym() { return symbol("mu", SymbolKind::spectral); }
Symbol y_sym() { return symbol("y"); }
Symbol v_sym() { return symbol("v"); }
Symbol series_var() { return symbol("_t"); }

std::vector<Symbol> family(std::string_view base, int count, SymbolKind kind) {
  std::vector<Symbol> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) out.push_back(indexed(base, i, kind));
  return out;
}

}  // namespace cmsba
