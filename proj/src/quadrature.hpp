#pragma once

// Thin wrappers over Boost quadrature used for analytic constants and tails.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <functional>

namespace beurling::quad {

inline double finite(const std::function<double(double)>& f, double a, double b, double tol = 1e-14) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, tol);
}

// non-adaptive 10-point Gauss-Legendre, for short cells of smooth integrands
inline double fixed(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss<double, 10>::integrate(f, a, b);
}

inline double to_infinity(const std::function<double(double)>& f, double a, double tol = 1e-14) {
  boost::math::quadrature::exp_sinh<double> es;
  return es.integrate([&](double t) { return f(a + t); }, 0.0, std::numeric_limits<double>::infinity(), tol);
}

// int_Y^inf e^{-z w} f(w) dw for Re z > 0, f smooth and slowly varying on [Y, inf)
inline std::complex<double> laplace_tail(const std::function<double(double)>& f, std::complex<double> z,
                                         double Y) {
  if (z.imag() == 0.0)
    return to_infinity([&](double w) { return std::exp(-z.real() * (w - Y)) * f(w); }, Y) *
           std::exp(-z.real() * Y);
  // oscillatory: 10-point Gauss on panels of at most a quarter period.  Adaptive
  // rules stall here once the panel values fall far below the tolerance scale.
  double panel = std::min(8.0, 0.5 * M_PI / std::abs(z.imag()));
  std::complex<double> acc = 0.0;
  double a = Y;
  for (int i = 0; i < 2000000; ++i) {
    double b = a + panel;
    double re = fixed([&](double w) { return (std::exp(-z * w) * f(w)).real(); }, a, b);
    double im = fixed([&](double w) { return (std::exp(-z * w) * f(w)).imag(); }, a, b);
    acc += std::complex<double>(re, im);
    double bound = std::exp(-z.real() * b) * std::abs(f(b)) / z.real();
    if (bound < 1e-15 * std::max(std::abs(acc), 1e-300) || bound < 1e-300) break;
    a = b;
  }
  return acc;
}

}  // namespace beurling::quad
