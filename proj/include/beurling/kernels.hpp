#pragma once

// Summability kernels and convolution averages of the remainder E.
//
//   Cesaro-Riesz  K(y) = e^{-y} (1 - e^{-y})_+^beta
//   Abel          K(y) = e^{-y} exp(-e^{-y})
//   Lambert       K(y) = e^{-y} p(e^{-y}),  p(u) = (u / (1 - e^u))'
//   custom        centred Gaussian of width sigma
//
// (E*K)(y) is computed two ways: on the y-grid from samples of E, and from dN
// directly,
//   (E*K)(y) = int e^{-u} dN(u) F(y - u) - a Kc(y),
//   F(r) = int_{-inf}^r e^{w - r} K(w) dw,   Kc(r) = int_{-inf}^r K,
// which is the multiplicative form int (N(u)/u) k1(u/x) du after an
// integration by parts; E never has to be formed.

#include <functional>
#include <string>
#include <vector>

#include "beurling/counting.hpp"
#include "beurling/number_system.hpp"

namespace beurling {

struct Kernel {
  std::string name;  // cesaro-riesz | abel | lambert | custom
  double beta = 0.0;   // Cesaro-Riesz order
  double width = 0.0;  // custom Gaussian sigma
  std::function<double(double)> value;
  double hat0 = 1.0;
  double moment_order = 0.0;  // declared; validated numerically up to 4
  double lo = 0.0, hi = 0.0;  // |K| < 1e-16 outside
  bool nonnegative = true;
};

Kernel cesaro_riesz(double beta);
Kernel abel_kernel();
Kernel lambert_kernel();
Kernel gaussian_kernel(double sigma, double moment_order = 1e9);
// "abel", "lambert", "cesaro-riesz[:beta]", "custom[:sigma]"
Kernel parse_kernel(const std::string& spec);

// p(u) = (u / (1 - e^u))', series near 0
double lambert_p(double u);

double kernel_hat0(const Kernel& k);          // closed form when known
double kernel_hat0_numeric(const Kernel& k);  // quadrature
double kernel_moment(const Kernel& k, double alpha);  // int (1+|y|)^alpha |K|

struct ConvSamples {
  double h = 0.0;
  std::vector<double> y, value;
};

// trapezoid convolution of sampled E (zero for y < 0) with K, at y = E.h * i
// for i in [i_lo, i_hi]
ConvSamples conv_additive(const RemainderProfile& E, const Kernel& k, long i_lo, long i_hi);

struct ConvAverage {
  ConvSamples primary;  // from dN
  ConvSamples additive;
  double max_gap = 0.0;       // sup |primary - additive|
  double relative_gap = 0.0;  // max_gap / sup |primary|
};
// usable: samples on [lo, Y - |lo|], where the cutoff at Y cannot be felt.
// truncated: E set to 0 beyond Y, samples over the whole support [lo, Y + hi]
// (so that int (E*K) = K^(0) int_0^Y E exactly)
enum class ConvRange { usable, truncated };
ConvAverage conv_average(const NumberSystem& sys, const RemainderProfile& E, const Kernel& k,
                         ConvRange range = ConvRange::usable);

struct WindowStat {
  double lo = 0.0, hi = 0.0, value = 0.0;
};

struct DecayReport {
  std::vector<WindowStat> windows;  // sup |y (E*K)(y)| on [2^j, 2^{j+1}] (last may be partial)
  double slope = 0.0;               // of log sup against j
  bool consistent = false;
  std::string verdict;
};
DecayReport decay_diagnostic(const ConvSamples& s);

struct L1Report {
  std::vector<WindowStat> cumulative;  // int_0^{2^j} |E*K|
  std::vector<double> increments;  // verdict: last one <= kL1Ratio * previous, or below kL1Floor
  bool consistent = false;
  std::string verdict;
};
inline constexpr double kL1Ratio = 0.75;
inline constexpr double kL1Floor = 1e-12;
L1Report l1_diagnostic(const ConvSamples& s);

struct BConstant {
  double b = 0.0, c = 0.0;
  double y_hi = 0.0;  // samples integrated up to here
  double tail = 0.0;  // size of the last window's mean |E*K| (reported, not added)
};
BConstant b_constant(const ConvSamples& s, const Kernel& k, double a);
// b from the primary form over the truncated range, E cut at log X
BConstant b_constant(const NumberSystem& sys, const Kernel& k, double a, double X);

// T(y) <= C (T*K)(y), T(y) = e^{-y} N(e^y), C^{-1} = int_{-inf}^0 e^y K(y) dy
struct DominationRow {
  double y = 0.0, T = 0.0, TK = 0.0;
  bool holds = false;
};
struct DominationReport {
  double C = 0.0;
  std::vector<DominationRow> rows;
};
DominationReport domination_check(const NumberSystem& sys, const Kernel& k, const std::vector<double>& y_list);

}  // namespace beurling
