#include "beurling/special.hpp"

#include <array>
#include <boost/math/special_functions/expint.hpp>
#include <cmath>

#include "beurling/errors.hpp"

namespace beurling::special {

using cd = std::complex<double>;

cd ein(cd z) {
  cd term = z;  // (-1)^{k+1} z^k / k!
  cd sum = z;
  for (int k = 2; k < 500; ++k) {
    term *= -z / static_cast<double>(k);
    cd add = term / static_cast<double>(k);
    sum += add;
    if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

namespace {

// E1(z) = e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...)))   (modified Lentz)
cd e1_continued_fraction(cd z) {
  const double tiny = 1e-300;
  cd b = z + 1.0;
  cd c = 1.0 / tiny;
  cd d = 1.0 / b;
  cd f = d;
  for (int i = 1; i < 20000; ++i) {
    double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    if (std::abs(c) < tiny) c = tiny;
    cd delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return f * std::exp(-z);
}

}  // namespace

cd e1(cd z) {
  if (z.imag() == 0.0 && z.real() <= 0.0)
    throw Error(ErrorCode::branch, "E1 evaluated on its branch cut");
  double r = std::abs(z);
  // the series loses about |z| + Re z digits-worth of cancellation; use it
  // only where that stays small, the continued fraction elsewhere
  bool series = r < 2.0 || (r < 12.0 && z.real() < -0.5 * r);
  if (series) return -euler_gamma - std::log(z) + ein(z);
  return e1_continued_fraction(z);
}

double ei(double x) { return boost::math::expint(x); }

cd riemann_zeta(cd s) {
  if (s == cd(1.0, 0.0)) throw Error(ErrorCode::domain, "zeta pole at s = 1");
  // zeta(s) = sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
  //           + sum_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
  static constexpr std::array<double, 12> b2k = {
      1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6,
      -3617.0 / 510, 43867.0 / 798, -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};
  const int N = 20 + static_cast<int>(std::abs(s.imag()));
  cd sum = 0.0;
  for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));
  double lnN = std::log(static_cast<double>(N));
  cd Ns = std::exp(-s * lnN);
  sum += Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;
  cd poch = s;           // s(s+1)...(s+2k-2)
  cd pw = Ns / static_cast<double>(N);  // N^{-s-2k+1}, k = 1
  double fact = 2.0;     // (2k)!
  for (std::size_t k = 1; k <= b2k.size(); ++k) {
    cd add = b2k[k - 1] / fact * poch * pw;
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    double kk = static_cast<double>(k);
    poch *= (s + 2.0 * kk - 1.0) * (s + 2.0 * kk);
    pw /= static_cast<double>(N) * N;
    fact *= (2.0 * kk + 1.0) * (2.0 * kk + 2.0);
  }
  return sum;
}

}  // namespace beurling::special
