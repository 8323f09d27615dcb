// cmsba: construct, verify and evaluate Baker-Akhiezer functions.
//
//   cmsba compute rational 2 1 --format text
//   cmsba verify all --n-max 3 --m-max 2
//   cmsba integrate selberg --case rational --n 2 --m 1 --point config/points/psi2.json
//   cmsba identity kernel --case rational --k 2 --l 0 --p 1 --q 0 --m 1
//   cmsba replay run.json
//
// Exit codes: 0 pass, 1 check failure, 2 usage, 3 construction error,
// 4 certificate violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cmsba/ba/deformed.hpp"
#include "cmsba/ba/rational.hpp"
#include "cmsba/ba/trig.hpp"
#include "cmsba/error.hpp"
#include "cmsba/pipeline.hpp"
#include "cmsba/symcore/serialize.hpp"

using namespace cmsba;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kUsage = 2, kConstruction = 3, kCertificate = 4 };

struct Options {
  std::string config;
  std::string manifest;
  std::string report;

  // compute
  std::string compute_case;
  int compute_n = 0, compute_m = 0;
  std::string format = "text";
  std::string cache;

  // verify
  std::string suite;
  int n = -1, m = 0, n_max = 3, m_max = 2;

  // integrate
  std::string rep;
  std::string int_case = "rational";
  std::string point_file;
  bool recursive = false;

  // identity
  std::string kind;
  std::string id_case = "rational";
  int k = 1, l = 0, p = 1, q = 0;
  double id_m = 1;
  double mu = 0.7;
  std::string masses = "1,1";
  std::string beta = "1";
  int trials = -1;
  long long seed = -1;
  std::string c0 = "sen";
};

std::vector<std::string> g_outputs;

// Reports go to stdout, one JSON object per line, and to --report.
class ReportSink {
 public:
  explicit ReportSink(const std::string& path) : path_(path) {}
  void emit(const json& j) {
    std::cout << j.dump() << "\n";
    lines_.push_back(j.dump());
  }
  ~ReportSink() {
    if (path_.empty()) return;
    std::ofstream out(path_);
    for (const auto& line : lines_) out << line << "\n";
    g_outputs.push_back(path_);
  }

 private:
  std::string path_;
  std::vector<std::string> lines_;
};

RunConfig load_run_config(const Options& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (o.trials > 0) c.trials = o.trials;
  if (o.seed >= 0) c.seed = static_cast<std::uint64_t>(o.seed);
  return c;
}

Complex parse_complex(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  throw MalformedExpression("point file: numbers must be reals or [re, im] pairs");
}

std::pair<std::vector<Complex>, std::vector<Complex>> load_point(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedExpression("cannot read point file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw MalformedExpression("point file: " + std::string(e.what()));
  }
  if (!j.contains("point") || !j.contains("spectral")) throw MalformedExpression("point file needs 'point' and 'spectral'");
  std::vector<Complex> pt, sp;
  for (const auto& v : j["point"]) pt.push_back(parse_complex(v));
  for (const auto& v : j["spectral"]) sp.push_back(parse_complex(v));
  return {pt, sp};
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

int cmd_compute(const Options& o) {
  BACase c = parse_case(o.compute_case);
  check_compute_parameters(c, o.compute_n, o.compute_m);
  BAResult r = compute_cached(c, o.compute_n, o.compute_m, cache_dir(o.cache.empty() ? std::nullopt : std::optional(o.cache)));
  if (o.format == "text") {
    std::cout << r.expr.to_string() << "\n";
  } else if (o.format == "latex") {
    std::cout << r.expr.to_latex() << "\n";
  } else {
    std::cout << serialize(r.expr) << "\n";
  }
  return kPass;
}

std::vector<std::pair<int, int>> grid(const Options& o, int n_min, bool negative_m) {
  std::vector<std::pair<int, int>> out;
  if (o.n > 0) {
    int m = o.m != 0 ? o.m : (negative_m ? -1 : 1);
    out.emplace_back(o.n, m);
    return out;
  }
  for (int n = n_min; n <= o.n_max; ++n)
    for (int a = 1; a <= o.m_max; ++a) out.emplace_back(n, negative_m ? -a : a);
  return out;
}

int cmd_verify(const Options& o) {
  static const std::set<std::string> suites{"schrodinger", "symmetry", "leading", "trig", "deformed", "all"};
  if (!suites.count(o.suite)) throw CLI::ValidationError("suite", "unknown suite '" + o.suite + "'");
  if (o.n_max < 1 || o.m_max < 1) throw MalformedExpression("ranges must be positive");
  ReportSink sink(o.report);
  bool all_pass = true;
  auto run = [&](const VerifyReport& r) {
    sink.emit(r.to_json());
    all_pass = all_pass && r.pass;
  };
  auto want = [&](const char* s) { return o.suite == s || o.suite == "all"; };
  const bool single = o.n > 0;
  if (!single || o.m >= 0)
    for (auto [n, m] : grid(o, 2, false)) {
      if (want("schrodinger")) run(verify_schrodinger(n, m));
      if (want("symmetry")) run(verify_symmetry(n, m));
      if (want("leading")) run(verify_leading_term(n, m));
      if (want("trig")) run(verify_trig_suite(n, m));
    }
  if (single && o.m < 0 && o.suite != "all" && o.suite != "deformed")
    throw MalformedExpression("suite " + o.suite + " needs m >= 1");
  if (want("deformed")) {
    if (single && o.m > 0) {
      if (o.suite == "deformed") throw MalformedExpression("the deformed suite needs m <= -1");
    } else {
      for (auto [n, m] : grid(o, 1, true)) {
        run(verify_deformed(n, m, BACase::deformed_rational));
        run(verify_deformed(n, m, BACase::deformed_trig));
      }
    }
  }
  return all_pass ? kPass : kCheckFailed;
}

int cmd_integrate(const Options& o) {
  if (o.rep != "selberg" && o.rep != "residue-numeric")
    throw CLI::ValidationError("rep", "unknown representation '" + o.rep + "'");
  if (o.point_file.empty()) throw CLI::ValidationError("--point", "a point file is required");
  RunConfig cfg = load_run_config(o);
  BACase c = parse_case(o.int_case);
  const int n = o.n, m = o.m;
  if (n < 1 || m < 1) throw MalformedExpression("integrate needs --n >= 1 and --m >= 1");
  auto [pt, sp] = load_point(o.point_file);
  const bool deformed = c == BACase::deformed_rational || c == BACase::deformed_trig;
  const std::size_t dim = static_cast<std::size_t>(n) + (deformed ? 1 : 0);
  if (pt.size() != dim || sp.size() != dim)
    throw MalformedExpression("point file must list " + std::to_string(dim) + " coordinates and spectral values");

  Stopwatch sw;
  Complex value;
  std::string method;
  std::optional<ContourSpec> contour;
  if (o.rep == "residue-numeric") {
    if (deformed) throw MalformedExpression("residue-numeric covers the rational and trig cases");
    value = residue_raise_rank_numeric(c, n, m, pt, sp, cfg.quad);
    method = "nested circles";
  } else if (c == BACase::rational && n == 2 && !o.recursive) {
    value = psi2_integral(m, pt, sp, cfg.quad);
    method = "explicit two-point ray integral";
  } else if (c == BACase::rational && n == 3 && !o.recursive) {
    value = psi3_integral(m, pt, sp, cfg.quad);
    method = "explicit triple ray integral";
  } else {
    if (!deformed && n < 2) throw MalformedExpression("selberg needs n >= 2");
    const int k = deformed ? n : n - 1;
    SelbergSetup st{c, m, k, sp, cfg.quad};
    BACase inner_case = (c == BACase::trig || c == BACase::deformed_trig) ? BACase::trig : BACase::rational;
    BAResult inner = compute_ba(inner_case, k, m);
    PointFn f = selberg_raise_rank_numeric(symbolic_point_fn(inner, std::span(sp).first(static_cast<std::size_t>(k))), st);
    contour = selberg_contour(st, pt);
    value = f(pt);
    method = "rank raising from the symbolic " + std::to_string(k) + "-point function";
  }
  json out = {{"rep", o.rep}, {"case", case_tag(c)}, {"n", n}, {"m", m}, {"method", method}, {"value", complex_json(value)}};
  if (contour)
    out["contour"] = {{"kind", contour_name(contour->kind)}, {"clearance", contour->clearance}, {"decay", contour->decay}};
  bool pass = true;
  if (!deformed) {
    Complex oracle = symbolic_point_fn(compute_ba(c, n, m), sp)(pt);
    double err = std::abs(value - oracle) / std::abs(oracle);
    double tol = c == BACase::rational && n == 2 ? 1e-8 : 1e-6;
    out["oracle"] = complex_json(oracle);
    out["relative-error"] = err;
    out["tolerance"] = tol;
    pass = err <= tol;
  } else {
    // No symbolic oracle for m > 0: check the eigen-equation instead.
    QuadConfig tight = cfg.quad;
    tight.tolerance = std::min(tight.tolerance, 1e-10);
    SelbergSetup st{c, m, n, sp, tight};
    BACase inner_case = c == BACase::deformed_trig ? BACase::trig : BACase::rational;
    PointFn f = selberg_raise_rank_numeric(
        symbolic_point_fn(compute_ba(inner_case, n, m), std::span(sp).first(static_cast<std::size_t>(n))), st);
    Complex e = sp.back() * sp.back() / static_cast<double>(m);
    for (int i = 0; i < n; ++i) e += sp[static_cast<std::size_t>(i)] * sp[static_cast<std::size_t>(i)];
    e = c == BACase::deformed_trig ? -4.0 * e : -e;
    // Step scaled to the fastest exponential rate; quadrature noise stays
    // below the truncation error for the fixed rule at nearby stencil points.
    double rate = 1;
    for (Complex s : sp) rate = std::max(rate, std::abs(s) * (c == BACase::deformed_trig ? 2 : 1));
    VerifyReport r = numeric_eigen_check(f, c, n, m, e, {pt}, {1e-2 / rate, true}, 1e-5);
    out["oracle"] = nullptr;
    out["eigen-check"] = r.to_json();
    pass = r.pass;
  }
  out["pass"] = pass;
  out["runtime-ms"] = sw.elapsed_ms();
  ReportSink sink(o.report);
  sink.emit(out);
  return pass ? kPass : kCheckFailed;
}

std::vector<Rational> parse_masses(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      Rational r(item);
      if (r.get_den() == 0) throw std::invalid_argument(item);
      r.canonicalize();
      out.push_back(r);
    } catch (const std::invalid_argument&) {
      throw MalformedExpression("bad mass '" + item + "'");
    }
  }
  if (out.size() < 2) throw MalformedExpression("at least two masses are needed");
  return out;
}

int cmd_identity(const Options& o) {
  RunConfig cfg = load_run_config(o);
  ReportSink sink(o.report);
  VerifyReport r;
  if (o.kind == "kernel") {
    KernelParams kp{parse_case(o.id_case), o.k, o.l, o.p, o.q, o.id_m, o.mu};
    if (o.c0 != "direct" && o.c0 != "sen") throw CLI::ValidationError("--c0", "must be direct or sen");
    r = identity_check(kp, cfg.trials, cfg.seed, o.c0 == "direct" ? C0Formula::direct : C0Formula::sen, cfg.fd);
  } else if (o.kind == "sen") {
    Rational beta;
    try {
      beta = Rational(o.beta);
      if (beta.get_den() == 0) throw std::invalid_argument(o.beta);
      beta.canonicalize();
    } catch (const std::invalid_argument&) {
      throw MalformedExpression("bad beta '" + o.beta + "'");
    }
    r = sen_check(parse_masses(o.masses), beta, cfg.trials, cfg.seed, cfg.fd);
  } else {
    throw CLI::ValidationError("kind", "unknown identity '" + o.kind + "'");
  }
  sink.emit(r.to_json());
  return r.pass ? kPass : kCheckFailed;
}

void write_manifest(const Options& o, const CLI::App& sub, const std::vector<std::string>& args) {
  json params = json::object();
  for (const CLI::Option* opt : sub.get_options())
    if (opt->count() > 0 && opt->get_name() != "--help") {
      std::string key = opt->get_name();
      if (key.rfind("--", 0) == 0) key = key.substr(2);
      params[key] = opt->results().size() == 1 ? json(opt->results().front()) : json(opt->results());
    }
  json m = {{"tool", "cmsba"},
            {"subcommand", sub.get_name()},
            {"parameters", params},
            {"cwd", std::filesystem::current_path().string()},
            {"args", args},
            {"config", o.config.empty() ? json(nullptr) : json(o.config)},
            {"seed", sub.get_name() == "identity" ? json(load_run_config(o).seed) : json(nullptr)},
            {"outputs", g_outputs}};
  std::ofstream(o.manifest) << m.dump(2) << "\n";
}

int run(std::vector<std::string> args);

// Re-runs the recorded arguments and compares each report with the recorded
// one, ignoring wall time.
int cmd_replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedExpression("cannot read manifest " + path);
  json m = json::parse(in);
  auto args = m.at("args").get<std::vector<std::string>>();
  if (m.contains("cwd")) std::filesystem::current_path(m["cwd"].get<std::string>());
  auto outputs = m.at("outputs").get<std::vector<std::string>>();
  std::vector<std::vector<json>> before;
  auto read_lines = [](const std::string& file) {
    std::vector<json> lines;
    std::ifstream f(file);
    for (std::string line; std::getline(f, line);)
      if (!line.empty()) {
        json j = json::parse(line);
        j.erase("runtime-ms");
        if (j.contains("eigen-check")) j["eigen-check"].erase("runtime-ms");
        lines.push_back(j);
      }
    return lines;
  };
  for (const auto& f : outputs) before.push_back(read_lines(f));
  int code = run(args);
  for (std::size_t i = 0; i < outputs.size(); ++i)
    if (read_lines(outputs[i]) != before[i]) {
      std::cerr << "replay: report " << outputs[i] << " differs from the recorded run\n";
      return kCheckFailed;
    }
  std::cerr << "replay: " << outputs.size() << " report(s) reproduced\n";
  return code;
}

int run(std::vector<std::string> args) {
  g_outputs.clear();
  Options o;
  CLI::App app{"Baker-Akhiezer functions for Calogero-Moser systems", "cmsba"};
  app.require_subcommand(1);
  app.add_option("--config", o.config, "quadrature / identity defaults (flat TOML)")->check(CLI::ExistingFile);
  app.add_option("--manifest", o.manifest, "write a run manifest for replay");
  app.add_option("--report", o.report, "also write the JSON reports to this file");

  auto* compute = app.add_subcommand("compute", "print a symbolic BA function");
  compute->add_option("case", o.compute_case, "rational | trig | def-rat | def-trig")->required();
  compute->add_option("n", o.compute_n)->required();
  compute->add_option("m", o.compute_m)->required();
  compute->add_option("--format", o.format)->check(CLI::IsMember({"text", "latex", "json"}));
  compute->add_option("--cache", o.cache, "cache directory (default $BA_CACHE_DIR)");

  auto* verify = app.add_subcommand("verify", "run symbolic verification suites");
  verify->add_option("suite", o.suite, "schrodinger | symmetry | leading | trig | deformed | all")->required();
  verify->add_option("--n", o.n);
  verify->add_option("--m", o.m);
  verify->add_option("--n-max", o.n_max);
  verify->add_option("--m-max", o.m_max);

  auto* integrate = app.add_subcommand("integrate", "evaluate an integral representation numerically");
  integrate->add_option("rep", o.rep, "selberg | residue-numeric")->required();
  integrate->add_option("--case", o.int_case);
  integrate->add_option("--n", o.n)->required();
  integrate->add_option("--m", o.m)->required();
  integrate->add_option("--point", o.point_file, "JSON file with 'point' and 'spectral'");
  integrate->add_flag("--recursive", o.recursive, "rank raising instead of the explicit n = 2, 3 integrals");
  integrate->add_option("--seed", o.seed);

  auto* identity = app.add_subcommand("identity", "check the kernel identity or Sen's eigenfunction");
  identity->add_option("kind", o.kind, "kernel | sen")->required();
  identity->add_option("--case", o.id_case);
  identity->add_option("--k", o.k);
  identity->add_option("--l", o.l);
  identity->add_option("--p", o.p);
  identity->add_option("--q", o.q);
  identity->add_option("--m", o.id_m);
  identity->add_option("--mu", o.mu);
  identity->add_option("--c0", o.c0, "direct | sen");
  identity->add_option("--masses", o.masses, "comma-separated rationals, e.g. 1,1/2");
  identity->add_option("--beta", o.beta);
  identity->add_option("--trials", o.trials);
  identity->add_option("--seed", o.seed);

  std::string replay_file;
  auto* replay = app.add_subcommand("replay", "re-run a manifest and compare its reports");
  replay->add_option("manifest", replay_file)->required()->check(CLI::ExistingFile);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  int code = kPass;
  try {
    if (*compute) code = cmd_compute(o);
    else if (*verify) code = cmd_verify(o);
    else if (*integrate) code = cmd_integrate(o);
    else if (*identity) code = cmd_identity(o);
    else return cmd_replay(replay_file);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CertificateViolation& e) {
    std::cerr << "certificate violation: " << e.what() << "\n";
    return kCertificate;
  } catch (const NearSingular& e) {
    std::cerr << "point too close to a singularity: " << e.what() << "\n";
    return kCertificate;
  } catch (const BranchCutCrossing& e) {
    std::cerr << "branch cut: " << e.what() << "\n";
    return kCertificate;
  } catch (const MalformedExpression& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const QuadratureNonConvergence& e) {
    std::cerr << "quadrature: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const Error& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kConstruction;
  }
  if (!o.manifest.empty()) {
    std::vector<std::string> recorded;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--manifest") {
        ++i;
        continue;
      }
      if (args[i].rfind("--manifest=", 0) == 0) continue;
      recorded.push_back(args[i]);
    }
    write_manifest(o, *app.get_subcommands().front(), recorded);
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}
