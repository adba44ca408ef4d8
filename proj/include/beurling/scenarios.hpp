#pragma once

// The catalog of number systems: classical primes, the extra-prime system,
// the three constructions with prescribed dPi (smooth omega-perturbation,
// bump-oscillation, cosine), the discretized cosine system, and the system
// with zeta_B(s) = zeta(s+1).  Each comes with declared constants and the
// behaviour it is expected to show.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "beurling/number_system.hpp"

namespace beurling {

using Params = std::map<std::string, std::string>;

enum class Expect { holds, fails, unknown };
const char* expect_name(Expect e);

// flag keys
inline constexpr const char* kFlagPNT = "pnt";                      // psi(x) ~ x
inline constexpr const char* kFlagSharpMertens = "sharp_mertens";   // psi1(x) = log x + c + o(1)
inline constexpr const char* kFlagDensity = "density_o_x_log";      // N(x) = ax + o(x/log x)
inline constexpr const char* kFlagRemainderL1 = "remainder_l1";     // int |N(x)-ax|/x^2 dx < inf
inline constexpr const char* kFlagMox = "M_o_x";                    // M(x) = o(x)
inline constexpr const char* kFlagmo1 = "m_o_1";                    // m(x) = o(1)
const std::vector<std::string>& flag_keys();

struct ScenarioSpec {
  std::string name;
  Params parameters;                    // resolved values, canonical formatting
  std::map<std::string, double> declared;  // a, c, m_limit, log_A, ...
  std::map<std::string, Expect> flags;
  // flags whose mechanism only shows beyond the computed window
  std::set<std::string> beyond_cutoff;
};

struct Scenario {
  ScenarioSpec spec;
  NumberSystemPtr system;
  std::function<double(double)> omega_y;  // ex51: omega(e^y)
};

const std::vector<std::string>& scenario_names();
Scenario build(const std::string& name, const Params& params = {});

// defaults
inline constexpr double kDefaultXMax = 1e6;
inline constexpr double kDefaultYMax = 40.0;
inline constexpr double kDefaultGridStep = 1.0 / 256;

// ---- smooth omega-perturbation ------------------------------------------

// omega(e^y): 1/log y for y >= e, 1 below ("loglog"); 0 ("zero")
std::function<double(double)> ex51_omega(const std::string& choice);
// c = int (1 - e^{-w})^2 omega(e^w) / w^2 dw
double ex51_c(const std::function<double(double)>& omega_y);

struct EnvelopeRow {
  double x = 0.0;
  double lower = 0.0, middle = 0.0, upper = 0.0;
  bool holds = false;
};
struct EnvelopeReport {
  double c = 0.0, C1 = 0.0, C2 = 0.0;
  double C = 1.0, alpha = 1.0;  // omega(x^{1/n}) / omega(x) <= C n^alpha
  std::vector<EnvelopeRow> rows;
};
// C1 I(x) <= (e^c x - N(x)) / x <= C2 I(x),  I(x) = int_x^inf omega(u)/(u log^2 u) du
EnvelopeReport ex51_envelope_check(const Scenario& sc, const std::vector<double>& x_list);

// ---- bump-oscillation construction --------------------------------------

double ex52_phi(double x);        // exp(1 - 1/(1 - 4x^2)) on (-1/2, 1/2)
double ex52_phi_prime(double x);
double ex52_g(double t);          // sum_n phi(n^3 (t - n - 1/2))
double ex52_g_prime(double t);
double ex52_f(double y);          // g'(log y)
// smallest log A >= 1 with |f(y)| <= y/2 for all y >= log A
double ex52_min_log_A();
// log a = int_{log A}^inf f(y) / y^2 dy
double ex52_log_density(double log_A);
// psi1(e^Y) - Y in closed form
double ex52_psi1_minus_log(double Y, double log_A);

// ---- system with zeta_B(s) = zeta(s+1) ------------------------------------

inline constexpr double kPrimeZeta2 = 0.45224742004106549850;  // sum_p p^{-2}

}  // namespace beurling
