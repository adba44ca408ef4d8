#include "beurling/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace beurling {

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json num(double v) {
  if (!std::isfinite(v)) return fmt12(v);
  return std::stod(fmt12(v));
}

Json num(cd z) { return Json::array({num(z.real()), num(z.imag())}); }

void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt12(row[i]);
    out << '\n';
  }
}

Json to_json(const Table& t) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::array();
    for (double v : row) r.push_back(num(v));
    rows.push_back(std::move(r));
  }
  return Json{{"columns", t.columns}, {"rows", std::move(rows)}};
}

static const char* expect_str(Expect e) { return expect_name(e); }

Json to_json(const ScenarioSpec& s) {
  Json j;
  j["name"] = s.name;
  j["parameters"] = Json::object();
  for (const auto& [k, v] : s.parameters) j["parameters"][k] = v;
  j["declared"] = Json::object();
  for (const auto& [k, v] : s.declared) j["declared"][k] = num(v);
  j["expected_flags"] = Json::object();
  for (const auto& [k, v] : s.flags) j["expected_flags"][k] = expect_str(v);
  j["beyond_cutoff"] = Json::array();
  for (const auto& k : s.beyond_cutoff) j["beyond_cutoff"].push_back(k);
  return j;
}

Json to_json(const MertensReport& m) {
  return Json{{"X", num(m.X)},
              {"a", num(m.a)},
              {"c_integral", num(m.c_integral)},
              {"c_harmonic", num(m.c_harmonic)},
              {"c_kernel", num(m.c_kernel)},
              {"tail_bound", num(m.tail_bound)},
              {"harmonic_slope", num(m.harmonic_slope)},
              {"max_gap", num(m.max_gap)},
              {"agreement_flag", m.agreement_flag}};
}

Json to_json(const ProbeReport& p) {
  Json pts = Json::array();
  for (const auto& pt : p.points) {
    Json vals = Json::array();
    for (const auto& v : pt.values) vals.push_back(num(v));
    Json sig = Json::array();
    for (double s : p.sigma_list) sig.push_back(num(s));
    pts.push_back(Json{{"t0", num(pt.t0)},
                       {"exponent", num(pt.exponent)},
                       {"class", pt.cls},
                       {"fit_residual", num(pt.fit_residual)},
                       {"monotone", pt.monotone},
                       {"cauchy_ratio", num(pt.cauchy_ratio)},
                       {"sigmas", std::move(sig)},
                       {"values", std::move(vals)}});
  }
  return Json{{"kind", "evidence"}, {"t_lo", num(p.t_lo)}, {"t_hi", num(p.t_hi)}, {"points", std::move(pts)}};
}

Json to_json(const DensityEstimate& d) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < d.sigmas.size(); ++i) rows.push_back(Json::array({num(d.sigmas[i]), num(d.values[i])}));
  return Json{{"estimate", num(d.estimate)}, {"spread", num(d.spread)}, {"sigma_and_(sigma-1)zeta", std::move(rows)}};
}

Json to_json(const DecayReport& d) {
  Json w = Json::array();
  for (const auto& x : d.windows) w.push_back(Json{{"lo", num(x.lo)}, {"hi", num(x.hi)}, {"sup_y_abs_EK", num(x.value)}});
  return Json{{"verdict", d.verdict}, {"consistent", d.consistent}, {"slope", num(d.slope)}, {"windows", std::move(w)}};
}

Json to_json(const L1Report& l) {
  Json c = Json::array();
  for (const auto& x : l.cumulative) c.push_back(Json{{"upto", num(x.hi)}, {"int_abs_EK", num(x.value)}});
  Json inc = Json::array();
  for (double v : l.increments) inc.push_back(num(v));
  return Json{{"verdict", l.verdict}, {"consistent", l.consistent}, {"cumulative", std::move(c)}, {"increments", std::move(inc)}};
}

Json to_json(const Check& c) {
  Json j{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
  if (c.informational) j["informational"] = true;
  return j;
}

Json to_json(const CriterionResult& c) {
  Json checks = Json::array();
  for (const auto& x : c.checks) checks.push_back(to_json(x));
  return Json{{"criterion", c.number}, {"title", c.title}, {"pass", c.pass()}, {"checks", std::move(checks)}};
}

Json to_json(const FlagResult& f) {
  Json ev = Json::object();
  for (const auto& e : f.evidence) ev[e.name] = num(e.value);
  Json j{{"flag", f.flag},
         {"declared", expect_str(f.declared)},
         {"observed", observed_name(f.observed)},
         {"contradiction", f.contradiction}};
  if (!f.note.empty()) j["note"] = f.note;
  j["evidence"] = std::move(ev);
  return j;
}

Json to_json(const ScenarioVerify& v) {
  Json flags = Json::array(), checks = Json::array();
  for (const auto& f : v.flags) flags.push_back(to_json(f));
  for (const auto& c : v.checks) checks.push_back(to_json(c));
  Json params = Json::object();
  for (const auto& [k, val] : v.parameters) params[k] = val;
  return Json{{"scenario", v.name},
              {"parameters", std::move(params)},
              {"contradiction", v.contradiction()},
              {"flags", std::move(flags)},
              {"checks", std::move(checks)}};
}

Json to_json(const VerifyReport& r) {
  Json sc = Json::array(), cr = Json::array();
  for (const auto& s : r.scenarios) sc.push_back(to_json(s));
  for (const auto& c : r.criteria) cr.push_back(to_json(c));
  return Json{{"contradiction", r.contradiction()}, {"scenarios", std::move(sc)}, {"criteria", std::move(cr)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace beurling
