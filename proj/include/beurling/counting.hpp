#pragma once

// Counting functions N, Pi, psi, psi1, M, m of a system, the remainder
// E(y) = e^{-y} N(e^y) - a, and the Mertens constant by several routes.

#include <limits>
#include <vector>

#include "beurling/number_system.hpp"

namespace beurling {

double counting_N(const NumberSystem& sys, double x);
double prime_Pi(const NumberSystem& sys, double x);
double chebyshev_psi(const NumberSystem& sys, double x);
double psi1(const NumberSystem& sys, double x);  // int_1^x dpsi(t)/t
double psi1_y(const NumberSystem& sys, double y);  // psi1(e^y), for y past double range

struct MobiusSums {
  double M = 0.0;  // int_{1-}^x dM
  double m = 0.0;  // int_{1-}^x dM(u)/u
};
MobiusSums mobius_summatory(const NumberSystem& sys, double x);

// |M(x) - x m(x) + int_1^x m(u) du|, the integral evaluated independently
double integration_by_parts_check(const NumberSystem& sys, double x);

struct RemainderProfile {
  double a = 0.0;
  double h = 0.0;        // y spacing, y_j = j h
  std::vector<double> E;  // E(y_j), j = 0..n-1
  double y_max() const { return E.empty() ? 0.0 : h * static_cast<double>(E.size() - 1); }
};
// a: declared or Richardson unless given (NaN = resolve)
RemainderProfile remainder_profile(const NumberSystem& sys,
                                   double a = std::numeric_limits<double>::quiet_NaN());

struct MertensReport {
  double X = 0.0;
  double a = 0.0;
  double c_integral = 0.0;   // -1 - (1/a) int_1^X (N(x) - a x)/x^2 dx
  double c_harmonic = 0.0;   // -(1/a) (int_1^X dN/t - a log X)
  double c_kernel = 0.0;     // -b/a - 1 with the Abel kernel
  double tail_bound = 0.0;   // estimate of |int_X^inf E|, not added; inf when the decay model gives none
  double harmonic_slope = 0.0;  // d c_harmonic / d log x over [log X / 2, log X]
  double max_gap = 0.0;
  bool agreement_flag = false;
};
MertensReport mertens_constant(const NumberSystem& sys, double X, double tol = 5e-3);

struct PntBoundRow {
  double x = 0.0, N = 0.0, bound = 0.0;  // bound = e x zeta(1 + 1/log x)
  bool holds = false;
};
std::vector<PntBoundRow> pnt_bound_check(const NumberSystem& sys, const std::vector<double>& x_list);

// least-squares slope of v against u
double ls_slope(const std::vector<double>& u, const std::vector<double>& v);

}  // namespace beurling
