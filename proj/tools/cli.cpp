#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "iso/catalog.hpp"
#include "iso/forge.hpp"
#include "iso/period.hpp"
#include "iso/potential.hpp"
#include "iso/rational.hpp"
#include "iso/series.hpp"
#include "iso/urabe.hpp"

namespace iso::cli {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Config {
  std::optional<double> lambda;
  std::string f, g, h;
  ParamMap params;
  std::optional<double> half_width;
  std::optional<double> tol;
  std::optional<double> residual_tol;
  std::string energies;
  std::string out;
  std::string format = "csv";
  std::optional<int> points;
  int order = 8;
  std::string entry;
};

// A table plus a JSON summary; rows hold numbers, strings or null.
struct Output {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json summary = json::object();
};

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number()) return num17(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  std::string s = v.get<std::string>();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void write_csv(const Output& o, std::ostream& os) {
  for (std::size_t i = 0; i < o.columns.size(); ++i) os << (i ? "," : "") << o.columns[i];
  os << "\n";
  for (const auto& r : o.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
    os << "\n";
  }
}

void emit(const Config& cfg, const Output& o, std::ostream& out, std::ostream& err) {
  if (cfg.format == "json") {
    json doc = o.summary;
    json rows = json::array();
    for (const auto& r : o.rows) rows.push_back(r);
    doc["table"] = {{"columns", o.columns}, {"rows", rows}};
    if (cfg.out.empty()) {
      out << doc.dump(2) << "\n";
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw Error("cannot write " + cfg.out);
      f << doc.dump(2) << "\n";
    }
    return;
  }
  if (cfg.out.empty()) {
    write_csv(o, out);
    err << o.summary.dump() << "\n";
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw Error("cannot write " + cfg.out);
  write_csv(o, f);
  const auto summary_path = std::filesystem::path(cfg.out).replace_extension(".json");
  std::ofstream s(summary_path);
  if (!s) throw Error("cannot write " + summary_path.string());
  s << o.summary.dump(2) << "\n";
}

struct EnergySpec {
  double lo = 1e-4;
  std::optional<double> hi;  // empty: half the largest admissible energy
  int n = 16;
  bool log = true;
};

EnergySpec parse_energies(const std::string& text) {
  EnergySpec e;
  if (text.empty()) return e;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 2 || parts.size() > 4) throw DomainError("--energies expects lo:hi[:n[:log|lin]]");
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw DomainError("--energies: bad number '" + s + "'");
    return v;
  };
  e.lo = number(parts[0]);
  if (parts[1] != "auto") e.hi = number(parts[1]);
  if (parts.size() >= 3) {
    const double n = number(parts[2]);
    if (n < 1 || n != std::floor(n)) throw DomainError("--energies: n must be a positive integer");
    e.n = static_cast<int>(n);
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") e.log = true;
    else if (parts[3] == "lin") e.log = false;
    else throw DomainError("--energies: spacing must be log or lin");
  }
  return e;
}

std::vector<double> energies_for(const Config& cfg, const Potential& pot) {
  const EnergySpec e = parse_energies(cfg.energies);
  const double hi = e.hi.value_or(0.5 * max_energy(pot));
  return energy_grid(e.lo, hi, e.n, e.log);
}

const char* stop_name(StopReason r) {
  switch (r) {
    case StopReason::Reached: return "reached";
    case StopReason::Singularity: return "singularity";
    case StopReason::DomainExhausted: return "domain_exhausted";
  }
  return "?";
}

double require_lambda(const Config& cfg, const char* cmd) {
  if (!cfg.lambda) throw DomainError(std::string(cmd) + " needs --lambda");
  if (!(*cfg.lambda > 0.0)) throw DomainError("--lambda must be positive");
  return *cfg.lambda;
}

double positive(std::optional<double> v, double dflt, const char* flag) {
  const double x = v.value_or(dflt);
  if (!(x > 0.0)) throw DomainError(std::string(flag) + " must be positive");
  return x;
}

int point_count(const Config& cfg, int dflt) {
  const int n = cfg.points.value_or(dflt);
  if (n < 2) throw DomainError("--points must be at least 2");
  return n;
}

void only(const Config& cfg, const std::string& which, const char* cmd) {
  const int given = !cfg.f.empty() + !cfg.g.empty() + !cfg.h.empty();
  const bool has = (which == "f" && !cfg.f.empty()) || (which == "g" && !cfg.g.empty()) ||
                   (which == "h" && !cfg.h.empty());
  if (given != 1 || !has) throw DomainError(std::string(cmd) + " takes exactly --" + which);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  v.back() = hi;
  return v;
}

std::vector<std::string> rational_strings(const SeriesPoly<Rational>& s) {
  std::vector<std::string> v;
  for (const auto& c : s.coeffs()) v.push_back(c.str());
  return v;
}

std::vector<double> rational_values(const SeriesPoly<Rational>& s) {
  std::vector<double> v;
  for (const auto& c : s.coeffs()) v.push_back(static_cast<double>(c));
  return v;
}

json tolerance_block(std::initializer_list<std::pair<const char*, double>> t) {
  json j = json::object();
  for (const auto& [k, v] : t) j[k] = v;
  return j;
}

// ---------------------------------------------------------------- commands

Output cmd_build(const Config& cfg) {
  only(cfg, "f", "build");
  IsoProblem p;
  p.lambda = require_lambda(cfg, "build");
  p.half_width = positive(cfg.half_width, 1.0, "--half-width");
  p.tol = positive(cfg.tol, 1e-10, "--tol");
  p.f = ScalarFn::parse(cfg.f, cfg.params, Interval{0.0, kInf});
  const PotentialSolution sol = solve_chouikha(p);

  Output o;
  o.columns = {"x", "H", "G", "g"};
  double res = 0.0;
  for (double x : linspace(sol.x_min(), sol.x_max(), point_count(cfg, 201))) {
    o.rows.push_back({x, sol.H(x), sol.G(x), sol.g(x)});
    res = std::max(res, std::abs(chouikha_residual(sol, sol.f(), x)));
  }
  for (double x : sol.grid()) res = std::max(res, std::abs(chouikha_residual(sol, sol.f(), x)));
  o.summary = {{"command", "build"},
               {"f", cfg.f},
               {"lambda", p.lambda},
               {"requested_half_width", p.half_width},
               {"achieved_half_width", sol.achieved_half_width()},
               {"x_min", sol.x_min()},
               {"x_max", sol.x_max()},
               {"stop_left", stop_name(sol.stop_left())},
               {"stop_right", stop_name(sol.stop_right())},
               {"steps", sol.steps()},
               {"max_chouikha_residual", res},
               {"tolerance", tolerance_block({{"ode_local", p.tol}})}};
  return o;
}

struct VerifyResult {
  Output out;
  bool isochronous = false;
};

VerifyResult cmd_verify(const Config& cfg) {
  only(cfg, "g", "verify");
  const double hw = positive(cfg.half_width, 0.5, "--half-width");
  const double period_tol = positive(cfg.tol, 1e-6, "--tol");
  const double res_tol = positive(cfg.residual_tol, 1e-6, "--residual-tol");
  if (cfg.lambda && !(*cfg.lambda > 0.0)) throw DomainError("--lambda must be positive");
  const Interval dom = Interval::symmetric(hw);
  const ScalarFn g = ScalarFn::parse(cfg.g, cfg.params, dom);
  const FunctionPotential pot(g, dom, cfg.lambda);
  const double lam = pot.lambda();

  UrabeOptions uo;
  uo.points_per_side = point_count(cfg, 512);
  const ScalarFn h_raw = h_from_g(pot, uo);
  const double odd_defect = oddness_defect(h_raw);
  const ScalarFn h = odd_part(h_raw);
  const ScalarFn f = f_from_h(h, lam);
  const double Xm = h.domain().hi;

  Output o;
  o.columns = {"x", "X", "h", "urabe_residual", "chouikha_residual"};
  double max_u = 0.0, max_c = 0.0;
  for (double x : linspace(-hw, hw, 401)) {
    const double X = x_capital(pot, x);
    if (std::abs(X) > Xm) continue;
    const double ru = urabe_residual(pot, h, x);
    const double rc = chouikha_residual(pot, f, x);
    max_u = std::max(max_u, std::abs(ru));
    max_c = std::max(max_c, std::abs(rc));
    o.rows.push_back({x, X, h(X), ru, rc});
  }
  const PeriodReport rep = period_scan(pot, energies_for(cfg, pot), period_tol);
  VerifyResult v;
  v.isochronous = rep.isochronous && max_u <= res_tol && max_c <= res_tol;
  o.summary = {{"command", "verify"},
               {"g", cfg.g},
               {"lambda", lam},
               {"half_width", hw},
               {"isochronous", v.isochronous},
               {"max_period_dev", rep.max_dev},
               {"max_method_disagreement", rep.max_disagreement},
               {"max_urabe_residual", max_u},
               {"max_chouikha_residual", max_c},
               {"h_oddness_defect", odd_defect},
               {"energies", rep.samples.size()},
               {"tolerance", tolerance_block({{"period", period_tol}, {"residual", res_tol}})}};
  v.out = std::move(o);
  return v;
}

Output cmd_convert(const Config& cfg) {
  const int given = !cfg.f.empty() + !cfg.h.empty();
  if (given != 1 || !cfg.g.empty()) throw DomainError("convert takes exactly one of --f, --h");
  const double lam = require_lambda(cfg, "convert");
  const double hw = positive(cfg.half_width, 1.0, "--half-width");
  const int n = point_count(cfg, 201);
  Output o;
  o.summary = {{"command", "convert"}, {"lambda", lam}};
  const bool from_f = !cfg.f.empty();
  const std::string& text = from_f ? cfg.f : cfg.h;
  if (from_f) {
    const ScalarFn f = ScalarFn::parse(text, cfg.params, Interval{0.0, kInf});
    const ScalarFn h = h_from_f(f, lam);
    o.columns = {"s", "h"};
    for (double s : linspace(-hw, hw, n)) o.rows.push_back({s, h(s)});
    o.summary["from"] = "f";
    o.summary["f"] = text;
  } else {
    const ScalarFn h = ScalarFn::parse(text, cfg.params, Interval::symmetric(hw));
    const ScalarFn f = f_from_h(h, lam);
    o.columns = {"s", "f"};
    for (double s : linspace(0.0, f.domain().hi, n)) o.rows.push_back({s, f(s)});
    o.summary["from"] = "h";
    o.summary["h"] = text;
  }
  const ExprAst ast = parse_expr(text);
  int deg = 0;
  if (is_polynomial(ast, &deg)) {
    const auto in = polynomial_series(ast, cfg.params, deg);
    const Rational lr = decimal_rational(lam);
    json series;
    if (from_f) {
      const auto h = h_coeffs_from_f(in, lr);
      series = {{"f", rational_strings(in)}, {"h", rational_strings(h)}, {"h_value", rational_values(h)}};
    } else {
      const auto f = f_coeffs_from_h(in, Rational(lr * lr));
      series = {{"h", rational_strings(in)}, {"f", rational_strings(f)}, {"f_value", rational_values(f)}};
    }
    o.summary["series"] = series;
  }
  return o;
}

VerifyResult cmd_period(const Config& cfg) {
  const int given = !cfg.f.empty() + !cfg.g.empty();
  if (given != 1 || !cfg.h.empty()) throw DomainError("period takes exactly one of --f, --g");
  const double tol = positive(cfg.tol, 1e-6, "--tol");
  std::unique_ptr<Potential> pot;
  if (!cfg.f.empty()) {
    IsoProblem p;
    p.lambda = require_lambda(cfg, "period --f");
    p.half_width = positive(cfg.half_width, 1.0, "--half-width");
    p.f = ScalarFn::parse(cfg.f, cfg.params, Interval{0.0, kInf});
    pot = std::make_unique<PotentialSolution>(solve_chouikha(p));
  } else {
    const double hw = positive(cfg.half_width, 0.5, "--half-width");
    if (cfg.lambda && !(*cfg.lambda > 0.0)) throw DomainError("--lambda must be positive");
    const Interval dom = Interval::symmetric(hw);
    pot = std::make_unique<FunctionPotential>(ScalarFn::parse(cfg.g, cfg.params, dom), dom, cfg.lambda);
  }
  ScanOptions so;
  if (cfg.points) so.nodes = point_count(cfg, 64);
  const PeriodReport rep = period_scan(*pot, energies_for(cfg, *pot), tol, so);
  Output o;
  o.columns = {"E", "x_minus", "x_plus", "T_quad", "T_ode", "deviation"};
  for (const auto& s : rep.samples)
    o.rows.push_back({s.E, s.x_minus, s.x_plus, s.T_quad, s.T_ode,
                      std::max(std::abs(s.T_quad - rep.omega), std::abs(s.T_ode - rep.omega))});
  o.summary = {{"command", "period"},
               {"lambda", rep.lambda},
               {"omega", rep.omega},
               {"isochronous", rep.isochronous},
               {"max_period_dev", rep.max_dev},
               {"max_method_disagreement", rep.max_disagreement},
               {"tolerance", tolerance_block({{"period", tol}, {"ode_local", so.ode_tol}})},
               {"quadrature_nodes", so.nodes}};
  return {std::move(o), rep.isochronous};
}

Output cmd_series(const Config& cfg) {
  only(cfg, "f", "series");
  const double lam = require_lambda(cfg, "series");
  if (cfg.order < 2 || cfg.order > 64) throw DomainError("--order must be in [2, 64]");
  const ExprAst ast = parse_expr(cfg.f);
  int deg = 0;
  if (!is_polynomial(ast, &deg)) throw DomainError("series needs a polynomial f");
  const auto f = polynomial_series(ast, cfg.params, std::max(deg, 0));
  const auto G = g_series_from_f(f, decimal_rational(lam), cfg.order);
  Output o;
  o.columns = {"n", "G_n", "G_n_value"};
  for (int n = 0; n <= G.order(); ++n) o.rows.push_back({n, G[n].str(), static_cast<double>(G[n])});
  o.summary = {{"command", "series"},
               {"f", cfg.f},
               {"lambda", lam},
               {"order", cfg.order},
               {"G", rational_strings(G)},
               {"exact", true}};
  return o;
}

Output cmd_catalog(const Config& cfg) {
  Output o;
  if (cfg.entry.empty()) {
    o.columns = {"name", "lambda", "isochronous", "x_lo", "x_hi", "g", "G", "X", "h", "f"};
    for (const auto& e : catalog_entries()) {
      auto text = [](const std::string& s) { return s.empty() ? json(nullptr) : json(s); };
      o.rows.push_back({e.name, e.lambda, e.isochronous, e.domain.lo, e.domain.hi, e.g_text, e.G_text,
                        text(e.X_text), text(e.h_text), text(e.f_text)});
    }
    o.summary = {{"command", "catalog"}, {"entries", o.rows.size()}};
    return o;
  }
  const CatalogEntry e = catalog_lookup(cfg.entry);
  o.columns = {"x", "g", "G", "X", "h_of_X", "f_of_G"};
  for (double x : linspace(e.domain.lo, e.domain.hi, point_count(cfg, 201))) {
    std::vector<json> row = {x, e.g(x), e.G(x), nullptr, nullptr, nullptr};
    if (e.X) {
      const double X = (*e.X)(x);
      row[3] = X;
      if (e.h->domain().contains(X)) row[4] = (*e.h)(X);
      if (e.f->domain().contains(e.G(x))) row[5] = (*e.f)(e.G(x));
    }
    o.rows.push_back(std::move(row));
  }
  o.summary = {{"command", "catalog"},
               {"name", e.name},
               {"lambda", e.lambda},
               {"isochronous", e.isochronous},
               {"domain", {e.domain.lo, e.domain.hi}},
               {"params", e.params},
               {"g", e.g_text},
               {"G", e.G_text}};
  if (e.isochronous) {
    o.summary["X"] = e.X_text;
    o.summary["h"] = e.h_text;
    o.summary["f"] = e.f_text;
  }
  return o;
}

// ---------------------------------------------------------------- config

void load_config(const std::string& path, Config& c) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DomainError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  try {
    if (j.contains("lambda")) c.lambda = j["lambda"].get<double>();
    if (j.contains("f")) c.f = j["f"].get<std::string>();
    if (j.contains("g")) c.g = j["g"].get<std::string>();
    if (j.contains("h")) c.h = j["h"].get<std::string>();
    if (j.contains("params")) c.params = j["params"].get<ParamMap>();
    if (j.contains("half_width")) c.half_width = j["half_width"].get<double>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("residual_tol")) c.residual_tol = j["residual_tol"].get<double>();
    if (j.contains("energies")) c.energies = j["energies"].get<std::string>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("format")) c.format = j["format"].get<std::string>();
    if (j.contains("points")) c.points = j["points"].get<int>();
    if (j.contains("order")) c.order = j["order"].get<int>();
    if (j.contains("entry")) c.entry = j["entry"].get<std::string>();
  } catch (const json::exception& e) {
    throw DomainError("config " + path + ": " + e.what());
  }
}

std::pair<std::string, double> parse_param(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw DomainError("--param expects name=value, got '" + kv + "'");
  const std::string name = kv.substr(0, eq), val = kv.substr(eq + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(val, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != val.size()) throw DomainError("--param " + name + ": bad number '" + val + "'");
  return {name, v};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isochronous potentials: construct, convert, verify, scan"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);
  app.set_version_flag("--version", "iso 1.0");

  Config flags;
  std::string config_path;
  std::vector<std::string> param_kv;
  double lambda = 0, half_width = 0, tol = 0, residual_tol = 0;
  int points = 0;

  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--config", config_path, "JSON file mirroring the flags; flags win");
    sc->add_option("--lambda", lambda, "frequency parameter, period 2 pi / lambda");
    sc->add_option("--param", param_kv, "bind an expression parameter, name=value (repeatable)");
    sc->add_option("--half-width", half_width, "requested half width of the x interval");
    sc->add_option("--tol", tol, "tolerance (ODE local tolerance for build, period tolerance otherwise)");
    sc->add_option("--points", points, "number of output samples (h samples per side for verify)");
    sc->add_option("--out", flags.out, "output path; CSV summaries go next to it as .json");
    sc->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_f = [&](CLI::App* sc) { sc->add_option("--f", flags.f, "Chouikha function f(x) as an expression"); };
  auto add_g = [&](CLI::App* sc) { sc->add_option("--g", flags.g, "restoring force g(x) as an expression"); };
  auto add_h = [&](CLI::App* sc) { sc->add_option("--h", flags.h, "Urabe function h(x) as an expression"); };
  auto add_energies = [&](CLI::App* sc) {
    sc->add_option("--energies", flags.energies, "energy grid lo:hi:n:log|lin; hi may be 'auto'");
  };

  auto* build = app.add_subcommand("build", "solve the Cauchy problem for f and lambda");
  add_common(build), add_f(build);
  auto* verify = app.add_subcommand("verify", "decide isochronicity of a force g");
  add_common(verify), add_g(verify), add_energies(verify);
  verify->add_option("--residual-tol", residual_tol, "tolerance on Urabe and Chouikha residuals");
  auto* convert = app.add_subcommand("convert", "convert between f and h");
  add_common(convert), add_f(convert), add_h(convert);
  auto* period = app.add_subcommand("period", "period scan over energies");
  add_common(period), add_f(period), add_g(period), add_energies(period);
  auto* series = app.add_subcommand("series", "exact Taylor coefficients of G for a polynomial f");
  add_common(series), add_f(series);
  series->add_option("--order", flags.order, "highest coefficient");
  auto* catalog = app.add_subcommand("catalog", "list reference problems or export one");
  add_common(catalog);
  catalog->add_option("--entry", flags.entry, "harmonic[:lambda], urabe[:a] or duffing[:beta]");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? 0 : 2;
  }

  CLI::App* sc = app.get_subcommands().front();
  try {
    Config cfg;
    if (!config_path.empty()) load_config(config_path, cfg);
    auto given = [&](const char* name) { return sc->get_option_no_throw(name) && sc->count(name) > 0; };
    if (given("--lambda")) cfg.lambda = lambda;
    if (given("--half-width")) cfg.half_width = half_width;
    if (given("--tol")) cfg.tol = tol;
    if (given("--residual-tol")) cfg.residual_tol = residual_tol;
    if (given("--points")) cfg.points = points;
    if (given("--f")) cfg.f = flags.f;
    if (given("--g")) cfg.g = flags.g;
    if (given("--h")) cfg.h = flags.h;
    if (given("--energies")) cfg.energies = flags.energies;
    if (given("--out")) cfg.out = flags.out;
    if (given("--format")) cfg.format = flags.format;
    if (given("--order")) cfg.order = flags.order;
    if (given("--entry")) cfg.entry = flags.entry;
    for (const auto& kv : param_kv) {
      const auto [k, v] = parse_param(kv);
      cfg.params[k] = v;
    }
    if (cfg.format != "csv" && cfg.format != "json") throw DomainError("format must be csv or json");

    const std::string name = sc->get_name();
    int code = 0;
    Output o;
    if (name == "build") o = cmd_build(cfg);
    else if (name == "convert") o = cmd_convert(cfg);
    else if (name == "series") o = cmd_series(cfg);
    else if (name == "catalog") o = cmd_catalog(cfg);
    else {
      VerifyResult v = name == "verify" ? cmd_verify(cfg) : cmd_period(cfg);
      o = std::move(v.out);
      code = v.isochronous ? 0 : 1;
    }
    emit(cfg, o, out, err);
    return code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << " (at offset " << e.offset() << ")\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace iso::cli
