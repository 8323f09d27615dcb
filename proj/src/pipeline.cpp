#include "cmsba/pipeline.hpp"

#include <cstdlib>
#include <fstream>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "cmsba/ba/deformed.hpp"
#include "cmsba/ba/rational.hpp"
#include "cmsba/ba/trig.hpp"
#include "cmsba/error.hpp"
#include "cmsba/symcore/serialize.hpp"

namespace cmsba {

namespace {

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) return s.substr(1, s.size() - 2);
  return s;
}

template <class T>
T parse_value(const std::string& key, const std::string& raw) {
  std::string v = unquote(raw);
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (v == "true") return true;
      if (v == "false") return false;
      throw std::invalid_argument(v);
    } else if constexpr (std::is_same_v<T, int>) {
      std::size_t pos;
      int r = std::stoi(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return r;
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      std::size_t pos;
      auto r = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return r;
    } else {
      std::size_t pos;
      double r = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return r;
    }
  } catch (const std::logic_error&) {
    throw MalformedExpression("config: bad value '" + raw + "' for " + key);
  }
}

std::vector<std::string> names(const std::vector<Symbol>& syms) {
  std::vector<std::string> out;
  for (Symbol s : syms) out.push_back(VarTable::global().name(s));
  return out;
}

std::vector<Symbol> symbols(const nlohmann::json& j, SymbolKind kind) {
  std::vector<Symbol> out;
  for (const auto& n : j) out.push_back(VarTable::global().intern(n.get<std::string>(), kind));
  return out;
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw MalformedExpression("config: " + std::string(e.what()));
  }
  RunConfig c;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw MalformedExpression("config: key '" + section + "' outside a section");
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key, v = value.data();
      if (section == "quadrature") {
        if (key == "nodes") c.quad.nodes = parse_value<int>(full, v);
        else if (key == "tolerance") c.quad.tolerance = parse_value<double>(full, v);
        else if (key == "max_levels") c.quad.max_levels = parse_value<int>(full, v);
        else if (key == "circle_eps") c.quad.circle_eps = parse_value<double>(full, v);
        else if (key == "clearance") c.quad.clearance = parse_value<double>(full, v);
        else if (key == "decay") c.quad.decay = parse_value<double>(full, v);
        else throw MalformedExpression("config: unknown key " + full);
      } else if (section == "identity") {
        if (key == "h") c.fd.h = parse_value<double>(full, v);
        else if (key == "richardson") c.fd.richardson = parse_value<bool>(full, v);
        else if (key == "trials") c.trials = parse_value<int>(full, v);
        else if (key == "seed") c.seed = parse_value<std::uint64_t>(full, v);
        else throw MalformedExpression("config: unknown key " + full);
      } else {
        throw MalformedExpression("config: unknown section [" + section + "]");
      }
    }
  }
  c.quad.validate();
  if (!(c.fd.h > 0)) throw MalformedExpression("config: identity.h must be positive");
  if (c.trials < 1) throw MalformedExpression("config: identity.trials must be positive");
  return c;
}

void check_compute_parameters(BACase c, int n, int m) {
  if (n < 1) throw MalformedExpression("n must be at least 1");
  switch (c) {
    case BACase::rational:
    case BACase::trig:
      if (m < 1) throw MalformedExpression("m must be at least 1 for " + case_tag(c));
      break;
    case BACase::deformed_rational:
    case BACase::deformed_trig:
      if (m > -1)
        throw MalformedExpression("symbolic deformed functions need m <= -1; positive m is available through "
                                  "'integrate selberg'");
      break;
  }
}

BAResult compute_ba(BACase c, int n, int m) {
  check_compute_parameters(c, n, m);
  switch (c) {
    case BACase::rational:
      return ba_rational(n, m);
    case BACase::trig:
      return ba_trig(n, m);
    case BACase::deformed_rational:
      return deformed_rational_residue(n, m);
    case BACase::deformed_trig:
      return deformed_trig_residue(n, m);
  }
  throw MalformedExpression("unknown case");
}

nlohmann::json result_to_json(const BAResult& r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& step : r.trace) trace.push_back({{"name", step.name}, {"value", to_json(SymExpr(step.value))}});
  return {{"case", case_tag(r.kind)},        {"n", r.n},
          {"m", r.m},                        {"m_star", r.m_star},
          {"positions", names(r.positions)}, {"spectral", names(r.spectral)},
          {"expr", to_json(r.expr)},         {"trace", trace}};
}

BAResult result_from_json(const nlohmann::json& j) {
  try {
    BAResult r;
    r.kind = parse_case(j.at("case").get<std::string>());
    r.n = j.at("n").get<int>();
    r.m = j.at("m").get<int>();
    r.m_star = j.at("m_star").get<int>();
    r.positions = symbols(j.at("positions"), SymbolKind::position);
    r.spectral = symbols(j.at("spectral"), SymbolKind::spectral);
    r.expr = from_json(j.at("expr"));
    for (const auto& step : j.at("trace")) {
      SymExpr v = from_json(step.at("value"));
      RationalFn value = v.is_zero() ? RationalFn(0) : v.single_term().second;
      r.trace.push_back({step.at("name").get<std::string>(), value});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedExpression(std::string("cached result: ") + e.what());
  }
}

std::optional<std::filesystem::path> cache_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return std::filesystem::path(*flag);
  if (const char* env = std::getenv("BA_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

BAResult compute_cached(BACase c, int n, int m, const std::optional<std::filesystem::path>& dir) {
  check_compute_parameters(c, n, m);
  if (!dir) return compute_ba(c, n, m);
  std::filesystem::path file = *dir / (case_tag(c) + "_" + std::to_string(n) + "_" + std::to_string(m) + ".json");
  if (std::ifstream in(file); in) {
    try {
      BAResult r = result_from_json(nlohmann::json::parse(in));
      if (r.kind == c && r.n == n && r.m == m) return r;
    } catch (const std::exception&) {
      // fall through and rebuild the entry
    }
  }
  BAResult r = compute_ba(c, n, m);
  std::filesystem::create_directories(*dir);
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << result_to_json(r).dump();
  }
  std::filesystem::rename(tmp, file);
  return r;
}

}  // namespace cmsba
