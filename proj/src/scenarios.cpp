#include "beurling/scenarios.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "beurling/errors.hpp"
#include "beurling/special.hpp"
#include "beurling/zeta.hpp"
#include "quadrature.hpp"

namespace beurling {

const char* expect_name(Expect e) {
  switch (e) {
    case Expect::holds: return "holds";
    case Expect::fails: return "fails";
    default: return "unknown";
  }
}

const std::vector<std::string>& flag_keys() {
  static const std::vector<std::string> k{kFlagPNT, kFlagSharpMertens, kFlagDensity,
                                          kFlagRemainderL1, kFlagMox, kFlagmo1};
  return k;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> n{"rational", "rational_plus_prime", "ex51",     "ex52",
                                          "ex53",     "ex53_discrete",       "remark54", "remark54_alt",
                                          "explicit"};
  return n;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::config, "parameter '" + key + "': expected a number, got '" + text + "'");
  }
}

class Reader {
 public:
  Reader(const std::string& scenario, const Params& p) : scenario_(scenario), p_(p) {}
  bool has(const std::string& k) {
    used_.insert(k);
    return p_.count(k) != 0;
  }
  double num(const std::string& k, double def) { return has(k) ? parse_number(k, p_.at(k)) : def; }
  std::string str(const std::string& k, const std::string& def) { return has(k) ? p_.at(k) : def; }
  void finish() const {
    for (const auto& [k, v] : p_)
      if (!used_.count(k))
        throw Error(ErrorCode::config, "scenario " + scenario_ + ": unknown parameter '" + k + "'");
  }

 private:
  std::string scenario_;
  const Params& p_;
  std::set<std::string> used_;
};

struct Grid {
  double h, y_max;
};

Grid read_grid(Reader& r, ScenarioSpec& spec, double y_default = kDefaultYMax) {
  Grid g{r.num("step_h", kDefaultGridStep), r.num("y_max", y_default)};
  if (!(g.h >= 0x1p-14 && g.h <= 0x1p-4))
    throw Error(ErrorCode::parameter, "step_h must lie in [2^-14, 2^-4]");
  if (!(g.y_max > 1.0 && g.y_max <= 2e4)) throw Error(ErrorCode::parameter, "y_max must lie in (1, 20000]");
  spec.parameters["step_h"] = fmt(g.h);
  spec.parameters["y_max"] = fmt(g.y_max);
  return g;
}

double read_x_max(Reader& r, ScenarioSpec& spec) {
  double x = r.num("x_max", kDefaultXMax);
  if (!(x >= 2.0 && x <= 1e8)) throw Error(ErrorCode::parameter, "x_max must lie in [2, 1e8]");
  spec.parameters["x_max"] = fmt(x);
  return x;
}

// dPi of a prime list: atoms at k log p of weight w(p, k)
LogGridMeasure prime_power_atoms(const std::vector<double>& primes, double X,
                                 const std::function<double(double, int)>& w, int k_limit = 1000) {
  double Y = std::log(X);
  LogGridMeasure m(kDefaultGridStep, Y, 0.0);
  std::vector<Atom> atoms;
  for (double p : primes) {
    double lp = std::log(p);
    for (int k = 1; k <= k_limit && k * lp <= Y + kAdmitSlack; ++k) atoms.push_back({k * lp, w(p, k)});
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.y < b.y; });
  m.set_atoms(std::move(atoms));
  return m;
}

// Pi ~ li beyond X: tails of the classical shape
void classical_tails(NumberSystem& s) {
  double Y = s.log_x_max;
  s.pi_tail = [Y](cd z) { return special::e1((z - 1.0) * Y); };
  s.psi_tail = [Y](cd z) { return std::exp((1.0 - z) * Y) / (z - 1.0); };
}

void discrete_common(NumberSystem& s, PrimeSystem ps, double X) {
  s.kind = SystemKind::discrete;
  s.log_x_max = std::log(X);
  s.pi_measure = prime_power_atoms(ps.primes, X, [](double, int k) { return 1.0 / k; });
  s.prime_list = std::move(ps);
}

std::vector<double> parse_prime_text(const std::string& text) {
  std::string t = text;
  // one value per line for the list reader
  std::replace(t.begin(), t.end(), ',', '\n');
  std::replace(t.begin(), t.end(), ' ', '\n');
  std::istringstream in(t);
  return read_prime_list(in).primes;
}

// base density (1 - u^{-1})/log u du, stored with tilt 1: (1 - e^{-y})/y
double base_stored(double y) { return y == 0.0 ? 1.0 : -std::expm1(-y) / y; }

// (delta_1 + dx) * mu for mu stored with tilt 1.  Lebesgue measure dx has stored
// density 1, so the convolution's stored density is the running stored mass of mu.
LogGridMeasure lebesgue_times(const LogGridMeasure& mu) {
  LogGridMeasure out = mu;
  auto f = mu.density();
  auto g = out.density();
  auto atoms = mu.atoms();
  double h = mu.step_h(), run = 0.0;
  std::size_t ai = 0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (j) run += 0.5 * h * (f[j - 1] + f[j]);
    double y = mu.node_y(j);
    while (ai < atoms.size() && atoms[ai].y <= y + LogGridMeasure::kAtomMergeTolerance) run += atoms[ai++].weight;
    g[j] = f[j] + run;
  }
  return out;
}

// int_Y^inf e^{-s y}(e^y - 1)/y dy and int_Y^inf e^{-s y}(e^y - 1) dy
cd base_pi_tail(cd s, double Y) { return special::e1((s - 1.0) * Y) - special::e1(s * Y); }
cd base_psi_tail(cd s, double Y) { return std::exp(-(s - 1.0) * Y) / (s - 1.0) - std::exp(-s * Y) / s; }

// ---- bump-oscillation helpers ----

constexpr int kBumpMax = 60;

double bump_center(int n) { return n + 0.5; }
double bump_half(int n) { return 0.5 / (static_cast<double>(n) * n * n); }

// int over the part of bump n with t >= t_lo of phi'(u) * F(t) du, t = c_n + u/n^3
template <class F>
auto bump_integral(int n, double t_lo, F&& fn, int panels = 1) {
  double n3 = static_cast<double>(n) * n * n;
  double u_lo = std::max(-0.5, (t_lo - bump_center(n)) * n3);
  using R = decltype(fn(0.0));
  R acc{};
  if (u_lo >= 0.5) return acc;
  double step = (0.5 - u_lo) / panels;
  for (int i = 0; i < panels; ++i) {
    double a = u_lo + i * step, b = a + step;
    if constexpr (std::is_same_v<R, cd>) {
      double re = quad::finite([&](double u) { return ex52_phi_prime(u) * fn(bump_center(n) + u / n3).real(); },
                               a, b, 1e-13);
      double im = quad::finite([&](double u) { return ex52_phi_prime(u) * fn(bump_center(n) + u / n3).imag(); },
                               a, b, 1e-13);
      acc += cd(re, im);
    } else {
      acc += quad::finite([&](double u) { return ex52_phi_prime(u) * fn(bump_center(n) + u / n3); }, a, b, 1e-14);
    }
  }
  return acc;
}

// int_{max(Y, log A)}^inf e^{-z y} f(y) y^{-p} dy over all bumps, p = 2 (dPi) or 1 (dpsi)
cd ex52_extra_transform(cd z, double Y, double log_A, int p) {
  double t_lo = std::log(std::max(Y, log_A));
  cd acc = 0.0;
  for (int n = 1; n <= kBumpMax; ++n) {
    double hi = bump_center(n) + bump_half(n);
    if (hi <= t_lo) continue;
    double y_lo = std::exp(std::max(t_lo, bump_center(n) - bump_half(n)));
    double y_hi = std::exp(hi);
    if (z.real() * y_lo > 60.0) break;
    if (p == 2 && std::exp(-bump_center(n) + 0.5) < 1e-19) break;
    int panels = 1 + static_cast<int>(std::min(2e4, std::abs(z.imag()) * (y_hi - y_lo) / 1.5));
    // f(y) y^{-p} dy = phi'(u) e^{(1-p) t} du
    acc += bump_integral(
        n, t_lo, [&](double t) { return std::exp(-z * std::exp(t) + (1.0 - p) * t); }, panels);
  }
  return acc;
}

// ---- catalog ----

Scenario make_rational(Reader& r, bool extra) {
  Scenario sc;
  auto& spec = sc.spec;
  spec.name = extra ? "rational_plus_prime" : "rational";
  double X = read_x_max(r, spec);
  auto sys = std::make_shared<NumberSystem>();
  PrimeSystem ps = rational_primes(X);
  double a = 1.0, c = -special::euler_gamma;
  if (extra) {
    double q = r.num("q", 1.5);
    if (!(q > 1.0)) throw Error(ErrorCode::parameter, "extra prime q must exceed 1");
    spec.parameters["q"] = fmt(q);
    auto& v = ps.primes;
    v.insert(std::upper_bound(v.begin(), v.end(), q), q);
    ps.source = PrimeSystem::Source::explicit_list;
    a = q / (q - 1.0);
    c += std::log(q) / (q - 1.0);
    sys->label = "rational_plus_prime(q=" + fmt(q) + ")";
  } else {
    sys->label = "rational";
  }
  discrete_common(*sys, std::move(ps), X);
  classical_tails(*sys);
  sys->density_a = a;
  sys->remainder_decay = DecayModel::exponential;
  spec.declared = {{"a", a}, {"c", c}};
  for (const auto& k : flag_keys()) spec.flags[k] = Expect::holds;
  sc.system = sys;
  return sc;
}

Scenario make_ex51(Reader& r) {
  Scenario sc;
  auto& spec = sc.spec;
  spec.name = "ex51";
  Grid g = read_grid(r, spec);
  std::string choice = r.str("omega", "loglog");
  auto omega = ex51_omega(choice);
  spec.parameters["omega"] = choice;
  double c = ex51_c(omega);
  auto sys = std::make_shared<NumberSystem>();
  sys->label = "ex51(omega=" + choice + ")";
  sys->kind = SystemKind::continuous;
  sys->log_x_max = g.y_max;
  auto nu_stored = [omega](double y) {
    double b = base_stored(y);
    return b * b * omega(y);
  };
  sys->pi_measure = sample_density([=](double y) { return base_stored(y) + nu_stored(y); }, 0.0, g.h, g.y_max, 1.0);
  sys->density_a = std::exp(c);
  sys->log_A = 1.0;  // A = e^e: omega switches at log y = 1
  sys->remainder_decay = choice == "zero" ? DecayModel::exponential : DecayModel::power;
  sys->decay_power = 1.0;
  double Y = g.y_max;
  auto nu_w2 = [omega](double w) {
    double b = -std::expm1(-w) / w;
    return b * b * omega(w);
  };
  auto nu_w1 = [omega](double w) {
    double b = -std::expm1(-w);
    return b * b * omega(w) / w;
  };
  bool zero = choice == "zero";
  sys->log_zeta_exact = [nu_w2, zero](cd s) {
    cd v = std::log(s / (s - 1.0));
    if (!zero) v += quad::laplace_tail(nu_w2, s - 1.0, 1.0) + [&] {
      double re = quad::finite([&](double w) { return (std::exp(-(s - 1.0) * w) * nu_w2(w)).real(); }, 0.0, 1.0);
      double im = quad::finite([&](double w) { return (std::exp(-(s - 1.0) * w) * nu_w2(w)).imag(); }, 0.0, 1.0);
      return cd(re, im);
    }();
    return v;
  };
  sys->pi_tail = [Y, nu_w2, zero](cd s) {
    cd v = base_pi_tail(s, Y);
    if (!zero) v += quad::laplace_tail(nu_w2, s - 1.0, Y);
    return v;
  };
  sys->psi_tail = [Y, nu_w1, zero](cd s) {
    cd v = base_psi_tail(s, Y);
    if (!zero) v += quad::laplace_tail(nu_w1, s - 1.0, Y);
    return v;
  };
  if (zero) {
    // exp of the base density is Lebesgue measure plus delta_1: N(x) = x
    double h = g.h, ym = g.y_max;
    sys->dN_builder = [h, ym] {
      LogGridMeasure m = sample_density([](double) { return 1.0; }, 0.0, h, ym, 1.0);
      m.add_atom(0.0, 1.0);
      return m;
    };
  }
  spec.declared = {{"a", std::exp(c)}, {"c_nu", c}, {"omega_C", 1.0}, {"omega_alpha", 1.0}};
  for (const auto& k : flag_keys()) spec.flags[k] = Expect::unknown;
  spec.flags[kFlagPNT] = Expect::holds;
  spec.flags[kFlagDensity] = Expect::holds;
  if (zero) {
    spec.declared["c"] = -1.0;
    spec.flags[kFlagSharpMertens] = Expect::holds;
    spec.flags[kFlagRemainderL1] = Expect::holds;
  } else {
    spec.flags[kFlagSharpMertens] = Expect::fails;
  }
  sc.system = sys;
  sc.omega_y = omega;
  return sc;
}

Scenario make_ex52(Reader& r) {
  Scenario sc;
  auto& spec = sc.spec;
  spec.name = "ex52";
  Grid g = read_grid(r, spec);
  double log_A_min = ex52_min_log_A();
  double log_A = log_A_min;
  if (r.has("A") && r.has("log_A")) throw Error(ErrorCode::config, "give A or log_A, not both");
  if (r.has("A")) {
    double A = r.num("A", 0.0);
    if (!(A > 1.0)) throw Error(ErrorCode::parameter, "A must exceed 1");
    log_A = std::log(A);
  } else if (r.has("log_A")) {
    log_A = r.num("log_A", log_A_min);
  }
  if (log_A < log_A_min) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "A below positivity threshold: |f(y)| <= y/2 needs log A >= %.6f, got log A = %.6f", log_A_min,
                  log_A);
    throw Error(ErrorCode::parameter, buf);
  }
  spec.parameters["log_A"] = fmt(log_A);
  double log_a = ex52_log_density(log_A);
  auto sys = std::make_shared<NumberSystem>();
  sys->label = "ex52(log_A=" + fmt(log_A) + ")";
  sys->kind = SystemKind::continuous;
  sys->log_x_max = g.y_max;
  LogGridMeasure base = sample_density(base_stored, 0.0, g.h, g.y_max, 1.0);
  if (log_A < g.y_max) {
    LogGridMeasure extra =
        sample_density([](double y) { return ex52_f(y) / (y * y); }, log_A, g.h, g.y_max, 1.0);
    sys->pi_measure = add(base, extra);
    // exp(base) = delta_1 + dx exactly; only the bump part goes through Volterra
    auto ex = std::make_shared<LogGridMeasure>(std::move(extra));
    sys->dN_builder = [ex] { return lebesgue_times(volterra_N_from_Pi(*ex)); };
  } else {
    sys->pi_measure = std::move(base);
    double h = g.h, ym = g.y_max;
    sys->dN_builder = [h, ym] {
      LogGridMeasure m = sample_density([](double) { return 1.0; }, 0.0, h, ym, 1.0);
      m.add_atom(0.0, 1.0);
      return m;
    };
  }
  sys->density_a = std::exp(log_a);
  sys->log_A = log_A;
  sys->remainder_decay = DecayModel::power;
  sys->decay_power = 1.0;
  double Y = g.y_max;
  sys->log_zeta_exact = [log_A](cd s) {
    return std::log(s / (s - 1.0)) + ex52_extra_transform(s - 1.0, 0.0, log_A, 2);
  };
  sys->pi_tail = [Y, log_A](cd s) { return base_pi_tail(s, Y) + ex52_extra_transform(s - 1.0, Y, log_A, 2); };
  sys->psi_tail = [Y, log_A](cd s) { return base_psi_tail(s, Y) + ex52_extra_transform(s - 1.0, Y, log_A, 1); };
  spec.declared = {{"a", std::exp(log_a)}, {"log_A", log_A}, {"log_A_min", log_A_min}};
  for (const auto& k : flag_keys()) spec.flags[k] = Expect::unknown;
  spec.flags[kFlagPNT] = Expect::holds;
  spec.flags[kFlagRemainderL1] = Expect::holds;
  spec.flags[kFlagSharpMertens] = Expect::fails;
  if (log_A >= g.y_max) spec.beyond_cutoff = {kFlagRemainderL1, kFlagSharpMertens};
  sc.system = sys;
  return sc;
}

void ex53_flags(ScenarioSpec& spec) {
  for (const auto& k : flag_keys()) spec.flags[k] = Expect::unknown;
  spec.flags[kFlagPNT] = Expect::fails;
  spec.flags[kFlagSharpMertens] = Expect::fails;
  spec.flags[kFlagMox] = Expect::holds;
  spec.flags[kFlagmo1] = Expect::holds;
}

Scenario make_ex53(Reader& r) {
  Scenario sc;
  auto& spec = sc.spec;
  spec.name = "ex53";
  Grid g = read_grid(r, spec);
  auto sys = std::make_shared<NumberSystem>();
  sys->label = "ex53";
  sys->kind = SystemKind::continuous;
  sys->log_x_max = g.y_max;
  sys->pi_measure =
      sample_density([](double y) { return (1.0 + std::cos(y)) / y; }, kEx53Start, g.h, g.y_max, 1.0);
  double a = ex53_density();
  sys->density_a = a;
  sys->log_A = kEx53Start;
  sys->remainder_decay = DecayModel::power;
  sys->decay_power = 0.5;
  double Y = g.y_max;
  sys->Pi_exact = ex53_Pi;
  sys->log_zeta_exact = ex53_log_zeta;
  sys->pi_tail = [Y](cd s) { return ex53_pi_tail(s, Y); };
  sys->psi_tail = [Y](cd s) { return ex53_psi_tail(s, Y); };
  spec.declared = {{"a", a}};
  ex53_flags(spec);
  spec.flags[kFlagRemainderL1] = Expect::fails;
  sc.system = sys;
  return sc;
}

Scenario make_ex53_discrete(Reader& r) {
  Scenario sc;
  auto& spec = sc.spec;
  spec.name = "ex53_discrete";
  double k_max = r.num("k_max", 1e5);
  if (!(k_max >= 1 && k_max <= 1e7 && k_max == std::floor(k_max)))
    throw Error(ErrorCode::parameter, "k_max must be an integer in [1, 1e7]");
  double X = read_x_max(r, spec);
  spec.parameters["k_max"] = fmt(k_max);
  PrimeSystem ps = discretize(ex53_Pi, static_cast<std::size_t>(k_max), std::exp(kDefaultYMax));
  // the list is complete only up to its last element
  X = std::min(X, ps.primes.back());
  spec.parameters["x_max"] = fmt(X);
  auto sys = std::make_shared<NumberSystem>();
  sys->label = "ex53_discrete(k_max=" + fmt(k_max) + ")";
  discrete_common(*sys, std::move(ps), X);
  double Y = sys->log_x_max;
  sys->Pi_exact = ex53_Pi;
  sys->pi_tail = [Y](cd s) { return ex53_pi_tail(s, Y); };
  sys->psi_tail = [Y](cd s) { return ex53_psi_tail(s, Y); };
  sys->log_A = kEx53Start;
  sys->remainder_decay = DecayModel::power;
  sys->decay_power = 0.5;
  // discretization shifts the density away from the continuous value
  DensityEstimate de = density_a(*sys);
  sys->density_a = de.estimate;
  spec.declared["a_estimated"] = de.estimate;
  ex53_flags(spec);
  sc.system = sys;
  return sc;
}

Scenario make_remark54(Reader& r, bool alt) {
  Scenario sc;
  auto& spec = sc.spec;
  spec.name = alt ? "remark54_alt" : "remark54";
  double X = read_x_max(r, spec);
  auto sys = std::make_shared<NumberSystem>();
  sys->label = spec.name;
  sys->kind = SystemKind::discrete;
  sys->log_x_max = std::log(X);
  auto primes = rational_primes(X).primes;
  if (alt)
    sys->pi_measure = prime_power_atoms(primes, X, [](double p, int) { return 1.0 / p; }, 1);
  else
    sys->pi_measure = prime_power_atoms(primes, X, [](double p, int k) { return std::pow(p, -k) / k; });
  double Y = sys->log_x_max;
  // beyond X: sum_{p > X} p^{-1-s} ~ int_X^inf u^{-1-s} du / log u
  sys->pi_tail = [Y](cd s) { return special::e1(s * Y); };
  sys->psi_tail = [Y](cd s) { return std::exp(-s * Y) / s; };
  sys->density_a = 0.0;
  sys->remainder_decay = DecayModel::unknown;
  // dM = exp(-dPi) by the same exact atom recursion as dN
  const LogGridMeasure* pm = &sys->pi_measure;
  sys->dM_builder = [pm] { return volterra_N_from_Pi(scaled(*pm, -1.0)); };
  double m_limit = alt ? std::exp(-kPrimeZeta2) : 6.0 / (special::pi * special::pi);
  spec.declared = {{"a", 0.0}, {"m_limit", m_limit}};
  for (const auto& k : flag_keys()) spec.flags[k] = Expect::unknown;
  spec.flags[kFlagPNT] = Expect::fails;
  spec.flags[kFlagSharpMertens] = Expect::fails;
  spec.flags[kFlagMox] = Expect::holds;
  spec.flags[kFlagmo1] = Expect::fails;
  sc.system = sys;
  return sc;
}

Scenario make_explicit(Reader& r) {
  Scenario sc;
  auto& spec = sc.spec;
  spec.name = "explicit";
  double X = read_x_max(r, spec);
  std::vector<double> primes;
  if (r.has("primes") && r.has("primes_file")) throw Error(ErrorCode::config, "give primes or primes_file, not both");
  if (r.has("primes")) {
    primes = parse_prime_text(r.str("primes", ""));
    spec.parameters["primes"] = r.str("primes", "");
  } else if (r.has("primes_file")) {
    std::string path = r.str("primes_file", "");
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::config, "cannot read primes_file '" + path + "'");
    primes = read_prime_list(in).primes;
    spec.parameters["primes_file"] = path;
  } else {
    throw Error(ErrorCode::config, "explicit scenario needs primes or primes_file");
  }
  auto sys = std::make_shared<NumberSystem>();
  sys->label = "explicit";
  discrete_common(*sys, make_prime_system(std::move(primes)), X);
  for (const auto& k : flag_keys()) spec.flags[k] = Expect::unknown;
  sc.system = sys;
  return sc;
}

}  // namespace

Scenario build(const std::string& name, const Params& params) {
  Reader r(name, params);
  Scenario sc;
  if (name == "rational") sc = make_rational(r, false);
  else if (name == "rational_plus_prime") sc = make_rational(r, true);
  else if (name == "ex51") sc = make_ex51(r);
  else if (name == "ex52") sc = make_ex52(r);
  else if (name == "ex53") sc = make_ex53(r);
  else if (name == "ex53_discrete") sc = make_ex53_discrete(r);
  else if (name == "remark54") sc = make_remark54(r, false);
  else if (name == "remark54_alt") sc = make_remark54(r, true);
  else if (name == "explicit") sc = make_explicit(r);
  else throw Error(ErrorCode::unknown_scenario, "unknown scenario '" + name + "'");
  r.finish();
  return sc;
}

// ---- omega-perturbation ----

std::function<double(double)> ex51_omega(const std::string& choice) {
  if (choice == "loglog") return [](double y) { return y >= M_E ? 1.0 / std::log(y) : 1.0; };
  if (choice == "zero") return [](double) { return 0.0; };
  throw Error(ErrorCode::config, "omega must be loglog or zero, got '" + choice + "'");
}

double ex51_c(const std::function<double(double)>& omega_y) {
  auto f = [&](double w) {
    double b = w == 0.0 ? 1.0 : -std::expm1(-w) / w;
    return b * b * omega_y(w);
  };
  return quad::finite(f, 0.0, M_E) + quad::to_infinity(f, M_E);
}

EnvelopeReport ex51_envelope_check(const Scenario& sc, const std::vector<double>& x_list) {
  if (sc.spec.name != "ex51" || !sc.omega_y) throw Error(ErrorCode::domain, "envelope check needs an ex51 system");
  EnvelopeReport rep;
  const auto& om = sc.omega_y;
  rep.c = ex51_c(om);
  rep.C = sc.spec.declared.at("omega_C");
  rep.alpha = sc.spec.declared.at("omega_alpha");
  rep.C1 = rep.c > 0 ? std::expm1(rep.c) / (4.0 * rep.c) : 0.25;
  double term = 1.0;
  for (int n = 0; n < 200; ++n) {
    if (n) term *= rep.c / n;
    rep.C2 += term * std::pow(n + 1.0, rep.alpha + 1.0);
    if (n > 5 && term < 1e-18) break;
  }
  rep.C2 *= rep.C;
  const NumberSystem& sys = *sc.system;
  double ec = std::exp(rep.c);
  for (double x : x_list) {
    EnvelopeRow row;
    row.x = x;
    double Y = std::log(x);
    double I = quad::to_infinity([&](double y) { return om(y) / (y * y); }, Y);
    row.lower = rep.C1 * I;
    row.upper = rep.C2 * I;
    row.middle = ec - distribution_y(sys.dN(), Y) * std::exp(-Y);
    // with omega = 0 all three vanish; allow grid rounding there
    double slack = 1e-9 * ec;
    row.holds = row.lower <= row.middle + slack && row.middle <= row.upper + slack;
    rep.rows.push_back(row);
  }
  return rep;
}

// ---- bump-oscillation ----

double ex52_phi(double x) {
  double q = 1.0 - 4.0 * x * x;
  return q > 0.0 ? std::exp(1.0 - 1.0 / q) : 0.0;
}

double ex52_phi_prime(double x) {
  double q = 1.0 - 4.0 * x * x;
  return q > 0.0 ? std::exp(1.0 - 1.0 / q) * (-8.0 * x / (q * q)) : 0.0;
}

namespace {
int bump_index(double t) {
  auto n = static_cast<int>(std::floor(t));  // bump n lives in (n, n+1)
  return (n >= 1 && std::abs(t - bump_center(n)) < bump_half(n)) ? n : 0;
}
}  // namespace

double ex52_g(double t) {
  int n = bump_index(t);
  return n ? ex52_phi(static_cast<double>(n) * n * n * (t - bump_center(n))) : 0.0;
}

double ex52_g_prime(double t) {
  int n = bump_index(t);
  double n3 = static_cast<double>(n) * n * n;
  return n ? n3 * ex52_phi_prime(n3 * (t - bump_center(n))) : 0.0;
}

double ex52_f(double y) { return y > 0.0 ? ex52_g_prime(std::log(y)) : 0.0; }

double ex52_min_log_A() {
  static const double value = [] {
    // largest violation of |f(y)| <= y/2; violations end once bumps are
    // too small relative to e^t, so scan bumps until none is found twice
    double best = 1.0;
    int clean = 0;
    for (int n = 1; n <= kBumpMax && clean < 2; ++n) {
      double n3 = static_cast<double>(n) * n * n;
      auto excess = [&](double u) {
        return n3 * std::abs(ex52_phi_prime(u)) - 0.5 * std::exp(bump_center(n) + u / n3);
      };
      const int steps = 200000;
      double du = 1.0 / steps;
      double hit = -1.0;
      for (int i = steps - 1; i >= 0; --i) {
        double u = -0.5 + i * du;
        if (excess(u) > 0.0) {
          hit = u;
          break;
        }
      }
      if (hit < -0.5 + du / 2) {
        ++clean;
        continue;
      }
      clean = 0;
      boost::uintmax_t it = 200;
      auto [lo, hi] = boost::math::tools::toms748_solve(excess, hit, std::min(hit + du, 0.5 - 1e-300),
                                                         boost::math::tools::eps_tolerance<double>(52), it);
      best = std::max(best, std::exp(bump_center(n) + hi / n3));
      (void)lo;
    }
    return best;
  }();
  return value;
}

double ex52_log_density(double log_A) {
  double t_lo = std::log(log_A);
  double acc = 0.0;
  for (int n = 1; n <= kBumpMax; ++n) {
    if (bump_center(n) + bump_half(n) <= t_lo) continue;
    if (std::exp(-bump_center(n) + 0.5) < 1e-19) break;
    // f(y)/y^2 dy = phi'(u) e^{-t} du
    acc += bump_integral(n, t_lo, [](double t) { return std::exp(-t); });
  }
  return acc;
}

double ex52_psi1_minus_log(double Y, double log_A) {
  // psi1(e^Y) = int_0^Y (1 - e^{-y}) dy + int_{log A}^Y f(y)/y dy,  f(y)/y dy = d g(log y)
  double v = -1.0 + std::exp(-Y);
  if (Y > log_A) v += ex52_g(std::log(Y)) - ex52_g(std::log(log_A));
  return v;
}

}  // namespace beurling
