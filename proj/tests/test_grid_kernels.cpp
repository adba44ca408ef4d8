// serial:: and omp:: loops must produce identical bits, and the trapezoid
// convolution must match a direct double sum written out here.

#include <doctest.h>

#include <random>
#include <vector>

#include "beurling/grid_kernels.hpp"

using namespace beurling::gridk;

namespace {

std::vector<double> noise(std::size_t n, unsigned seed, std::size_t zeros_front = 0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  std::vector<double> v(n, 0.0);
  for (std::size_t i = zeros_front; i < n; ++i) v[i] = N(rng);
  return v;
}

}  // namespace

TEST_SUITE("grid_kernels") {

TEST_CASE("trapezoid_convolve matches a direct sum") {
  const double h = 0.01;
  auto a = noise(300, 1, 5), b = noise(300, 2);
  std::vector<double> out(300), ref(300);
  serial::trapezoid_convolve(a, b, h, out);
  for (std::size_t j = 0; j < ref.size(); ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k <= j; ++k) s += a[k] * b[j - k];
    ref[j] = h * (s - 0.5 * a[0] * b[j] - 0.5 * a[j] * b[0]);
  }
  for (std::size_t j = 0; j < ref.size(); ++j) CHECK(out[j] == doctest::Approx(ref[j]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("serial and omp are bitwise equal") {
  for (std::size_t n : {1u, 2u, 17u, 1000u, 4097u}) {
    auto a = noise(n, 3, n / 3), b = noise(n, 4);
    std::vector<double> s(n), o(n);
    serial::trapezoid_convolve(a, b, 0.125, s);
    omp::trapezoid_convolve(a, b, 0.125, o);
    CHECK(s == o);
  }
  auto u = noise(2000, 5), v = noise(1500, 6);
  LagRange r{10, 1900, 0, 1500, 100, 2500};
  std::vector<double> s(2400), o(2400);
  serial::lagged_products(u, v, r, s);
  omp::lagged_products(u, v, r, o);
  CHECK(s == o);
}

TEST_CASE("lagged_products matches its definition") {
  auto u = noise(50, 7), v = noise(40, 8);
  LagRange r{5, 45, 3, 37, 10, 70};
  std::vector<double> out(60);
  serial::lagged_products(u, v, r, out);
  for (std::ptrdiff_t j = r.j_begin; j < r.j_end; ++j) {
    double s = 0.0;
    for (std::ptrdiff_t k = r.k_begin; k < r.k_end; ++k)
      if (j - k >= r.v_lo && j - k < r.v_hi) s += u[k] * v[j - k];
    CHECK(out[j - r.j_begin] == doctest::Approx(s).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("max_threads is positive") { CHECK(max_threads() >= 1); }

}  // TEST_SUITE
