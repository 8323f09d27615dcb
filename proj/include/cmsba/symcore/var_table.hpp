#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cmsba {

enum class SymbolKind : std::uint8_t { position, spectral };

// Hard cap on the number of distinct symbols in one process. Monomials are
// dense exponent arrays of this length.
inline constexpr std::size_t kMaxSymbols = 48;

struct Symbol {
  std::uint16_t index = 0;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

// Process-wide, append-only symbol registry. Registration order is the
// variable order used by the graded lexicographic monomial order, and an
// index never changes once assigned.
class VarTable {
 public:
  static VarTable& global();

  // Returns the existing symbol when the name is known; throws
  // MalformedExpression if it was registered with a different kind.
  Symbol intern(std::string_view name, SymbolKind kind);
  std::optional<Symbol> find(std::string_view name) const;
  // Throws UnregisteredSymbol.
  Symbol at(std::string_view name) const;

  std::string name(Symbol s) const;
  // Display name used by the text/LaTeX printers ("lambda1" -> "λ1").
  std::string display_name(Symbol s) const;
  std::string latex_name(Symbol s) const;
  SymbolKind kind(Symbol s) const;
  std::size_t size() const;

 private:
  VarTable();
  struct Entry {
    std::string name;
    SymbolKind kind;
  };
  mutable std::shared_mutex mutex_;
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::uint16_t> by_name_;
};

Symbol symbol(std::string_view name, SymbolKind kind = SymbolKind::position);
// Indexed family member, e.g. indexed("x", 2) -> x2.
Symbol indexed(std::string_view base, int i, SymbolKind kind = SymbolKind::position);

// Standard families.
inline Symbol x_sym(int i) { return indexed("x", i); }
inline Symbol z_sym(int i) { return indexed("z", i); }
inline Symbol u_sym(int i) { return indexed("u", i); }
inline Symbol w_sym(int i) { return indexed("w", i); }
inline Symbol lambda_sym(int i) { return indexed("lambda", i, SymbolKind::spectral); }
inline Symbol nu_sym(int i) { return indexed("nu", i, SymbolKind::spectral); }
Symbol mu_sym();
Symbol y_sym();
Symbol v_sym();
// Reserved expansion variable used by the series machinery.
Symbol series_var();

std::vector<Symbol> family(std::string_view base, int count,
                           SymbolKind kind = SymbolKind::position);

}  // namespace cmsba
