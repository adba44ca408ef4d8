#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

namespace beurling::detail {

// the part of the y-axis a density node stands for under the trapezoid rule
struct NodeCell {
  double lo, hi;
};
NodeCell node_cell(std::size_t j, std::size_t n, double h);

// node j of a density shifted right by offset = w0*src[k] + w1*src[k+1]
struct Interp {
  std::ptrdiff_t k;
  double w0, w1;
};
Interp shifted_node(std::size_t j, std::size_t n, double h, double offset);

// i0 = int_0^l e^{lam t} dt,  i1 = int_0^l t e^{lam t} dt
template <class T>
struct ExpMoments {
  T i0, i1;
};

template <class T>
ExpMoments<T> exp_moments(T lam, double l) {
  T z = lam * l;
  if (std::abs(z) < 0.5) {
    // series; 20 terms is far below rounding for |z| < 1/2
    T term = 1.0, s0 = 0.0, s1 = 0.0;
    double fact = 1.0;
    for (int k = 0; k < 20; ++k) {
      s0 += term / (fact * (k + 1));
      s1 += term / (fact * (k + 2));
      term *= z;
      fact *= (k + 1);
    }
    return {l * s0, l * l * s1};
  }
  T e = std::exp(z);
  return {(e - 1.0) / lam, (l * e) / lam - (e - 1.0) / (lam * lam)};
}

}  // namespace beurling::detail
