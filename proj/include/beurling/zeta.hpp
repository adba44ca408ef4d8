#pragma once

// Mellin-Stieltjes transforms near Re s = 1: zeta from dN and from dPi,
// -zeta'/zeta, the density a, boundary probes, and the closed forms of the
// cosine example (dPi = (1 + cos log u)/log u du on [2, inf)).

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "beurling/measure.hpp"
#include "beurling/number_system.hpp"

namespace beurling {

enum class TailModel { none, linear_density };

struct MellinEvaluator {
  const LogGridMeasure* measure = nullptr;  // not owned
  double truncation_X = 1.0;
  TailModel tail_model = TailModel::none;
  double a = 0.0;  // density for the linear tail
};

// evaluator over the system's dN, truncated at its cutoff, with linear tail
MellinEvaluator make_evaluator(const NumberSystem& sys, TailModel tail = TailModel::linear_density);

cd zeta_from_N(const MellinEvaluator& ev, cd s);
cd zeta_from_N(const NumberSystem& sys, cd s);
cd log_zeta_from_Pi(const NumberSystem& sys, cd s);
cd zeta_from_Pi(const NumberSystem& sys, cd s);
double identity_residual(const NumberSystem& sys, cd s);
cd log_derivative(const NumberSystem& sys, cd s);

// sigma = 1 + 2^{-j}
std::vector<double> dyadic_sigmas(int j_lo = 4, int j_hi = 14);

struct DensityEstimate {
  double estimate = 0.0;
  double spread = 0.0;
  std::vector<double> sigmas, values;  // (sigma - 1) zeta(sigma)
};
DensityEstimate density_a(const NumberSystem& sys);
// scenario-declared value if present, else the Richardson estimate
double resolve_density(const NumberSystem& sys);

using AnalyticFn = std::function<cd(cd)>;

struct ProbePoint {
  double t0 = 0.0;
  double exponent = 0.0;
  std::string cls;  // pole | sqrt | bounded | inconclusive
  double fit_residual = 0.0;
  bool monotone = false;
  double cauchy_ratio = 0.0;  // last / first successive difference (bounded case)
  std::vector<cd> values;
};

struct ProbeReport {
  double t_lo = 0.0, t_hi = 0.0;
  std::vector<double> sigma_list;
  std::vector<ProbePoint> points;
};

ProbeReport boundary_probe(const AnalyticFn& F, const std::vector<double>& t0s,
                           const std::vector<double>& sigma_list);
std::string classify_exponent(double exponent);

// rational_zeta, rational_zeta_minus_pole, ex53_zeta, ex53_zeta_minus_pole,
// system_zeta (zeta_from_Pi of sys)
AnalyticFn named_function(const std::string& name, NumberSystemPtr sys = nullptr);

// cosine example
inline constexpr double kEx53Start = 0.69314718055994530942;  // log 2
cd ex53_G(cd s);             // finite-part integral, by series subtraction + quadrature
cd ex53_G_ein(cd s);         // same function through Ein
cd ex53_G_as_printed(cd s);  // the formula with upper limit e^2 and +2 gamma
cd ex53_zeta(cd s);          // e^{G(s)} / ((s-1) sqrt(s-1-i) sqrt(s-1+i))
cd ex53_log_zeta(cd s);      // int x^{-s} dPi through E1
cd ex53_pi_tail(cd s, double Y);   // int_{e^Y}^inf x^{-s} dPi
cd ex53_psi_tail(cd s, double Y);  // int_{e^Y}^inf x^{-s} dpsi
double ex53_Pi(double x);          // closed form through Ei and E1
double ex53_density();             // e^{G(1)}

}  // namespace beurling
