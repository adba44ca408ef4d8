#include "beurling/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "beurling/counting.hpp"
#include "beurling/kernels.hpp"
#include "beurling/report.hpp"
#include "beurling/verify.hpp"
#include "beurling/zeta.hpp"

namespace beurling {

namespace {

std::string join_issues(const std::vector<ConfigIssue>& v) {
  std::string s;
  for (const auto& i : v) s += (s.empty() ? "" : "; ") + (i.where.empty() ? "" : i.where + ": ") + i.message;
  return s;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::optional<double> to_number(const std::string& t) {
  if (t.empty()) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) return std::nullopt;
  return v;
}

std::vector<std::string> split_list(const std::string& t) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : t) {
    if (ch == ',' || ch == ';') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// "2", "1.5+0.5i", "1.5-2i"
std::optional<cd> to_complex(const std::string& t) {
  if (t.empty()) return std::nullopt;
  if (t.back() != 'i') {
    auto v = to_number(t);
    return v ? std::optional<cd>(cd(*v, 0.0)) : std::nullopt;
  }
  auto pos = t.find_last_of("+-");
  while (pos != std::string::npos && pos > 0 && (t[pos - 1] == 'e' || t[pos - 1] == 'E')) pos = t.find_last_of("+-", pos - 1);
  if (pos == std::string::npos || pos == 0) return std::nullopt;
  auto re = to_number(t.substr(0, pos));
  std::string im_text = t.substr(pos, t.size() - pos - 1);
  if (im_text == "+" || im_text == "-") im_text += "1";
  auto im = to_number(im_text);
  if (!re || !im) return std::nullopt;
  return cd(*re, *im);
}

using Validator = std::function<std::string(const std::string&)>;  // "" = fine

Validator number_in(double lo, double hi, bool lo_open = false, bool integer = false) {
  return [=](const std::string& t) -> std::string {
    auto v = to_number(t);
    if (!v) return "expected a number, got '" + t + "'";
    bool ok = (lo_open ? *v > lo : *v >= lo) && *v <= hi;
    if (!ok) return "value " + t + " outside " + (lo_open ? "(" : "[") + fmt12(lo) + ", " + fmt12(hi) + "]";
    if (integer && *v != std::floor(*v)) return "expected an integer, got '" + t + "'";
    return "";
  };
}

Validator one_of(std::vector<std::string> names) {
  return [names](const std::string& t) -> std::string {
    if (std::find(names.begin(), names.end(), t) != names.end()) return "";
    std::string all;
    for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
    return "'" + t + "' is not one of: " + all;
  };
}

Validator any_text() {
  return [](const std::string&) { return std::string(); };
}

Validator sigma_list() {
  return [](const std::string& t) -> std::string {
    auto items = split_list(t);
    if (items.size() < 4) return "sigma_list needs at least 4 values";
    double prev = INFINITY;
    for (const auto& s : items) {
      auto v = to_number(s);
      if (!v) return "expected a number, got '" + s + "'";
      if (!(*v > 1.0)) return "sigma values must exceed 1";
      if (!(*v < prev)) return "sigma values must decrease toward 1";
      prev = *v;
    }
    return "";
  };
}

Validator s_list() {
  return [](const std::string& t) -> std::string {
    for (const auto& s : split_list(t)) {
      auto z = to_complex(s);
      if (!z) return "expected a complex number like 1.5+2i, got '" + s + "'";
      if (!(z->real() > 1.0)) return "Re s must exceed 1, got '" + s + "'";
    }
    return "";
  };
}

Validator kernel_list() {
  return [](const std::string& t) -> std::string {
    for (const auto& k : split_list(t)) {
      try {
        parse_kernel(k);
      } catch (const Error& e) {
        return e.what();
      }
    }
    return "";
  };
}

struct KeySpec {
  std::string section;
  Validator check;
};

const std::map<std::string, KeySpec>& registry() {
  static const std::map<std::string, KeySpec> r = [] {
    std::vector<std::string> scen = scenario_names();
    scen.push_back("all");
    std::map<std::string, KeySpec> m;
    m["scenario"] = {"run", one_of(scen)};
    m["command"] = {"run", one_of(command_names())};
    m["format"] = {"run", one_of({"csv", "json"})};
    m["out"] = {"run", any_text()};
    m["q"] = {"scenario", number_in(1.0, 1e8, true)};
    m["A"] = {"scenario", number_in(1.0, INFINITY, true)};
    m["log_A"] = {"scenario", number_in(1.0, 2e4)};
    m["omega"] = {"scenario", one_of({"loglog", "zero"})};
    m["k_max"] = {"scenario", number_in(1, 1e7, false, true)};
    m["x_max"] = {"scenario", number_in(2, 1e8)};
    m["y_max"] = {"scenario", number_in(1, 2e4, true)};
    m["step_h"] = {"scenario", number_in(std::ldexp(1.0, -14), std::ldexp(1.0, -4))};
    m["primes"] = {"scenario", any_text()};
    m["primes_file"] = {"scenario", any_text()};
    m["X"] = {"mertens", number_in(1, INFINITY, true)};
    m["tol"] = {"mertens", number_in(0, 1, true)};
    m["kernel"] = {"kernels", kernel_list()};
    m["s_list"] = {"zeta", s_list()};
    m["function"] = {"probe", one_of({"system_zeta", "rational_zeta", "rational_zeta_minus_pole", "ex53_zeta",
                                      "ex53_zeta_minus_pole"})};
    m["t_lo"] = {"probe", number_in(-1e4, 1e4)};
    m["t_hi"] = {"probe", number_in(-1e4, 1e4)};
    m["t_step"] = {"probe", number_in(0, 1e4, true)};
    m["sigma_list"] = {"probe", sigma_list()};
    m["x_lo"] = {"count", number_in(1, 1e300)};
    m["x_hi"] = {"count", number_in(1, 1e300, true)};
    m["per_decade"] = {"count", number_in(1, 1000, false, true)};
    return m;
  }();
  return r;
}

const std::vector<std::string>& json_only() {
  static const std::vector<std::string> v = {"mertens", "kernels", "probe", "verify", "report"};
  return v;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(ErrorCode::config, join_issues(issues)), issues_(std::move(issues)) {}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> v = {"enumerate", "count", "mertens", "mobius", "kernels",
                                             "zeta",      "probe", "verify",  "report"};
  return v;
}

std::string default_format(const std::string& command) {
  return std::find(json_only().begin(), json_only().end(), command) != json_only().end() ? "json" : "csv";
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides, bool build_scenario) {
  std::vector<ConfigIssue> issues;
  std::map<std::string, std::pair<std::string, std::string>> values;  // key -> (value, where)
  static const std::vector<std::string> sections = {"run", "scenario", "mertens", "kernels", "zeta", "probe", "count"};

  auto take = [&](const std::string& raw, const std::string& where, std::string& section, bool from_set) {
    std::string line = raw;
    if (!from_set) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) return;
    if (!from_set && line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back({where, "malformed section header '" + line + "'"});
        return;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (std::find(sections.begin(), sections.end(), section) == sections.end())
        issues.push_back({where, "unknown section [" + section + "]"});
      return;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back({where, "expected key = value, got '" + line + "'"});
      return;
    }
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    auto it = registry().find(key);
    if (it == registry().end()) {
      issues.push_back({where, "unknown key '" + key + "'"});
      return;
    }
    if (!section.empty() && it->second.section != section) {
      issues.push_back({where, "key '" + key + "' belongs in [" + it->second.section + "], not [" + section + "]"});
      return;
    }
    if (val.empty()) {
      issues.push_back({where, "key '" + key + "' has no value"});
      return;
    }
    if (std::string msg = it->second.check(val); !msg.empty()) {
      issues.push_back({where, key + ": " + msg});
      return;
    }
    if (!from_set && values.count(key) && values[key].second.rfind("line", 0) == 0) {
      issues.push_back({where, "duplicate key '" + key + "' (first at " + values[key].second + ")"});
      return;
    }
    values[key] = {val, where};
  };

  std::istringstream in(text);
  std::string line, section;
  for (int n = 1; std::getline(in, line); ++n) take(line, "line " + std::to_string(n), section, false);
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    std::string none;
    take(overrides[i], "--set " + std::to_string(i + 1), none, true);
  }

  const std::size_t line_issues = issues.size();
  RunConfig cfg;
  auto get = [&](const std::string& k) { return values.count(k) ? values[k].first : std::string(); };
  auto where = [&](const std::string& k) { return values.count(k) ? values[k].second : std::string(); };
  cfg.scenario = get("scenario");
  cfg.command = get("command");
  cfg.format = get("format");
  cfg.out = get("out");
  if (cfg.scenario.empty()) issues.push_back({"", "missing scenario"});
  if (cfg.command.empty()) issues.push_back({"", "missing command"});
  if (cfg.scenario == "all" && !cfg.command.empty() && cfg.command != "verify")
    issues.push_back({where("scenario"), "scenario = all is only meaningful for verify"});
  if (!cfg.format.empty() && cfg.format == "csv" && default_format(cfg.command) == "json")
    issues.push_back({where("format"), "command " + cfg.command + " emits JSON only"});
  if (values.count("t_lo") && values.count("t_hi") && !(std::stod(get("t_lo")) <= std::stod(get("t_hi"))))
    issues.push_back({where("t_hi"), "t_hi must not be below t_lo"});
  if (values.count("t_lo") && values.count("t_hi")) {
    double span = std::stod(get("t_hi")) - std::stod(get("t_lo"));
    double step = values.count("t_step") ? std::stod(get("t_step")) : 0.25;
    if (span / step > 10000) issues.push_back({where("t_step"), "t-window holds more than 10000 points"});
  }
  if (values.count("x_lo") && values.count("x_hi") && !(std::stod(get("x_lo")) < std::stod(get("x_hi"))))
    issues.push_back({where("x_hi"), "x_hi must exceed x_lo"});
  for (const auto& [k, v] : values) {
    const auto& spec = registry().at(k);
    if (spec.section == "scenario") cfg.params[k] = v.first;
    else if (spec.section != "run") cfg.options[k] = v.first;
  }
  if (cfg.scenario == "all" && !cfg.params.empty())
    issues.push_back({where(cfg.params.begin()->first), "verify on the whole catalog takes no scenario parameters"});

  // scenario parameters are checked whenever the lines themselves parsed, so
  // that a bad parameter is reported alongside a missing command
  if (line_issues == 0 && build_scenario && !cfg.scenario.empty() && cfg.scenario != "all") {
    try {
      cfg.built = build(cfg.scenario, cfg.params);
    } catch (const Error& e) {
      // point at the parameter the message names, else at the scenario line
      std::string msg = e.what(), loc = where("scenario");
      for (const auto& [k, v] : cfg.params)
        if (msg.find("'" + k + "'") != std::string::npos || msg.rfind(k + " ", 0) == 0) loc = where(k);
      issues.push_back({loc, msg});
    }
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return cfg;
}

// ---------------------------------------------------------------------------

namespace {

double opt(const RunConfig& c, const std::string& k, double def) {
  auto it = c.options.find(k);
  return it == c.options.end() ? def : std::stod(it->second);
}

std::string opt_s(const RunConfig& c, const std::string& k, const std::string& def) {
  auto it = c.options.find(k);
  return it == c.options.end() ? def : it->second;
}

std::vector<double> x_grid(double x_lo, double x_hi, int per) {
  std::vector<double> xs;
  double l0 = std::log10(x_lo), l1 = std::log10(x_hi);
  auto n = static_cast<long>(std::floor((l1 - l0) * per + 1e-9));
  for (long i = 0; i <= n; ++i) xs.push_back(std::pow(10.0, l0 + static_cast<double>(i) / per));
  if (xs.back() < x_hi * (1 - 1e-12)) xs.push_back(x_hi);
  return xs;
}

double default_x_hi(const NumberSystem& sys) {
  if (sys.log_x_max > 690.0)
    throw Error(ErrorCode::out_of_range, "cutoff beyond double range; give x_hi");
  return sys.x_max();
}

Table count_table(const RunConfig& c, const NumberSystem& sys) {
  Table t{{"x", "N", "Pi", "psi", "psi1"}, {}};
  double hi = opt(c, "x_hi", 0.0);
  if (hi == 0.0) hi = default_x_hi(sys);
  for (double x : x_grid(opt(c, "x_lo", 1.0), hi, static_cast<int>(opt(c, "per_decade", 64))))
    t.rows.push_back({x, counting_N(sys, x), prime_Pi(sys, x), chebyshev_psi(sys, x), psi1(sys, x)});
  return t;
}

Table mobius_table(const RunConfig& c, const NumberSystem& sys) {
  Table t{{"x", "M", "m"}, {}};
  double hi = opt(c, "x_hi", 0.0);
  if (hi == 0.0) hi = default_x_hi(sys);
  for (double x : x_grid(opt(c, "x_lo", 1.0), hi, static_cast<int>(opt(c, "per_decade", 64)))) {
    MobiusSums ms = mobius_summatory(sys, x);
    t.rows.push_back({x, ms.M, ms.m});
  }
  return t;
}

Table enumerate_table(const NumberSystem& sys) {
  if (!sys.prime_list) throw Error(ErrorCode::domain, "enumerate needs a system given by a generator list");
  Table t{{"value", "Lambda", "mu"}, {}};
  for (const auto& g : enumerate(*sys.prime_list, sys.x_max()))
    t.rows.push_back({g.value, g.lambda_weight, static_cast<double>(g.mobius_weight)});
  return t;
}

Table zeta_table(const RunConfig& c, const NumberSystem& sys) {
  Table t{{"re_s", "im_s", "re_zeta_N", "im_zeta_N", "re_zeta_Pi", "im_zeta_Pi", "relative_residual"}, {}};
  std::string list = opt_s(c, "s_list", "1.25, 1.5, 2, 3, 1.5+1i, 2+5i");
  for (const auto& item : split_list(list)) {
    cd s = *to_complex(item);
    cd zn = zeta_from_N(sys, s), zp = zeta_from_Pi(sys, s);
    t.rows.push_back({s.real(), s.imag(), zn.real(), zn.imag(), zp.real(), zp.imag(), std::abs(zn - zp) / std::abs(zp)});
  }
  return t;
}

Json mertens_json(const RunConfig& c, const NumberSystem& sys) {
  double X = opt(c, "X", std::min(1e6, sys.log_x_max > 690 ? 1e300 : sys.x_max()));
  return to_json(mertens_constant(sys, X, opt(c, "tol", 5e-3)));
}

Json kernels_json(const RunConfig& c, const NumberSystem& sys) {
  Json out = Json::array();
  RemainderProfile E = remainder_profile(sys);
  for (const auto& name : split_list(opt_s(c, "kernel", "abel, lambert, cesaro-riesz:1"))) {
    Kernel k = parse_kernel(name);
    ConvAverage ca = conv_average(sys, E, k);
    Json j;
    j["kernel"] = name;
    j["hat0"] = num(kernel_hat0(k));
    j["hat0_numeric"] = num(kernel_hat0_numeric(k));
    j["a"] = num(E.a);
    j["conv_max_gap"] = num(ca.max_gap);
    j["conv_relative_gap"] = num(ca.relative_gap);
    j["decay"] = to_json(decay_diagnostic(ca.primary));
    j["l1"] = to_json(l1_diagnostic(ca.primary));
    if (E.a > 0) {
      BConstant b = b_constant(sys, k, E.a, std::exp(sys.log_x_max));
      j["b"] = num(b.b);
      j["c"] = num(b.c);
    }
    out.push_back(std::move(j));
  }
  return out;
}

Json probe_json(const RunConfig& c, const Scenario& sc) {
  double lo = opt(c, "t_lo", 0.5), hi = opt(c, "t_hi", 1.5), step = opt(c, "t_step", 0.25);
  std::vector<double> ts;
  for (long i = 0; lo + static_cast<double>(i) * step <= hi + 1e-12; ++i) ts.push_back(lo + static_cast<double>(i) * step);
  std::vector<double> sig = dyadic_sigmas();
  if (c.options.count("sigma_list")) {
    sig.clear();
    for (const auto& s : split_list(c.options.at("sigma_list"))) sig.push_back(std::stod(s));
  }
  ProbeReport p = boundary_probe(named_function(opt_s(c, "function", "system_zeta"), sc.system), ts, sig);
  Json j = to_json(p);
  j["function"] = opt_s(c, "function", "system_zeta");
  return j;
}

Json error_json(const Error& e) { return Json{{"error", {{"code", error_code_name(e.code())}, {"message", e.what()}}}}; }

void emit_table(const RunConfig& c, const Table& t, std::ostream& out) {
  std::string f = c.format.empty() ? default_format(c.command) : c.format;
  if (f == "csv") write_csv(out, t);
  else out << dump(to_json(t));
}

}  // namespace

int run(const RunConfig& c, std::ostream& out) {
  if (c.command == "verify") {
    VerifyReport r = verify(c.scenario, c.scenario == "all" ? Params{} : c.params);
    out << dump(to_json(r));
    return r.contradiction() ? kExitContradiction : kExitOk;
  }
  Scenario sc = c.built ? *c.built : build(c.scenario, c.params);
  const NumberSystem& sys = *sc.system;
  if (c.command == "enumerate") emit_table(c, enumerate_table(sys), out);
  else if (c.command == "count") emit_table(c, count_table(c, sys), out);
  else if (c.command == "mobius") emit_table(c, mobius_table(c, sys), out);
  else if (c.command == "zeta") emit_table(c, zeta_table(c, sys), out);
  else if (c.command == "mertens") out << dump(Json{{"scenario", to_json(sc.spec)}, {"mertens", mertens_json(c, sys)}});
  else if (c.command == "kernels") out << dump(Json{{"scenario", to_json(sc.spec)}, {"kernels", kernels_json(c, sys)}});
  else if (c.command == "probe") out << dump(Json{{"scenario", to_json(sc.spec)}, {"probe", probe_json(c, sc)}});
  else if (c.command == "report") {
    // every section runs; a numeric refusal in one is recorded, not fatal
    Json j;
    j["scenario"] = to_json(sc.spec);
    auto section = [&](const char* name, const std::function<Json()>& f) {
      try {
        j[name] = f();
      } catch (const Error& e) {
        j[name] = error_json(e);
      }
    };
    section("count", [&] { return to_json(count_table(c, sys)); });
    section("mobius", [&] { return to_json(mobius_table(c, sys)); });
    section("mertens", [&] { return mertens_json(c, sys); });
    section("kernels", [&] { return kernels_json(c, sys); });
    section("zeta", [&] { return to_json(zeta_table(c, sys)); });
    section("density", [&] { return to_json(density_a(sys)); });
    section("probe", [&] { return probe_json(c, sc); });
    ScenarioVerify v = verify_scenario(sc);
    j["verify"] = to_json(v);
    out << dump(j);
    return v.contradiction() ? kExitContradiction : kExitOk;
  } else {
    throw Error(ErrorCode::config, "unknown command " + c.command);
  }
  return kExitOk;
}

}  // namespace beurling
