#pragma once

// Special functions on the complex plane that Boost does not provide for
// complex arguments.

#include <complex>

namespace beurling::special {

inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double pi = 3.14159265358979323846;

// Ein(z) = int_0^z (1 - e^{-t})/t dt = sum_{k>=1} (-1)^{k+1} z^k / (k k!)   (entire)
std::complex<double> ein(std::complex<double> z);

// E1(z) = int_z^inf e^{-t}/t dt, principal branch, cut along (-inf, 0]
std::complex<double> e1(std::complex<double> z);

// Ei for real x (Boost)
double ei(double x);

// Riemann zeta for complex s != 1 with Re s > -10 (Euler-Maclaurin)
std::complex<double> riemann_zeta(std::complex<double> s);

}  // namespace beurling::special
