#include <doctest.h>

#include <cmath>

#include "beurling/errors.hpp"
#include "beurling/kernels.hpp"
#include "beurling/scenarios.hpp"
#include "beurling/special.hpp"

using namespace beurling;

namespace {

RemainderProfile zeros(double h, std::size_t n, double a = 1.0) {
  RemainderProfile E;
  E.a = a;
  E.h = h;
  E.E.assign(n, 0.0);
  return E;
}

const Scenario& rational() {
  static const Scenario sc = build("rational", {{"x_max", "1e6"}});
  return sc;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("kernel transforms at 0") {
  for (double beta : {0.0, 0.5, 1.0, 3.0}) {
    auto k = cesaro_riesz(beta);
    CHECK(kernel_hat0(k) == doctest::Approx(1.0 / (beta + 1.0)).epsilon(1e-14));
    CHECK(kernel_hat0_numeric(k) == doctest::Approx(1.0 / (beta + 1.0)).epsilon(1e-9));
  }
  CHECK(kernel_hat0(abel_kernel()) == doctest::Approx(1.0));
  CHECK(kernel_hat0_numeric(abel_kernel()) == doctest::Approx(1.0).epsilon(1e-9));
  auto lam = lambert_kernel();
  CHECK(kernel_hat0_numeric(lam) == doctest::Approx(kernel_hat0(lam)).epsilon(1e-8));
  CHECK(kernel_hat0_numeric(gaussian_kernel(0.3)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Lambert p near zero and its closed form") {
  // p(u) = (u/(1-e^u))' = (1 - e^u + u e^u) / (1 - e^u)^2
  // (the closed form cancels badly below 1e-2; there p(u) = 1/2 - u/6 + O(u^3))
  for (double u : {0.05, 0.1, 1.0, 5.0}) {
    double closed = (1.0 - std::exp(u) + u * std::exp(u)) / std::pow(1.0 - std::exp(u), 2);
    CHECK(lambert_p(u) == doctest::Approx(closed).epsilon(1e-9));
  }
  for (double u : {0.0, 1e-6, 1e-3}) CHECK(lambert_p(u) == doctest::Approx(0.5 - u / 6).epsilon(1e-9));
}

TEST_CASE("parse_kernel") {
  CHECK(parse_kernel("abel").name == "abel");
  CHECK(parse_kernel("cesaro-riesz:2").beta == 2.0);
  CHECK(parse_kernel("custom:0.25").width == 0.25);
  CHECK_THROWS_AS(parse_kernel("fejer"), Error);
  CHECK_THROWS_AS(parse_kernel("cesaro-riesz:-1"), Error);
}

TEST_CASE("additive convolution: zero and the unit-interval indicator") {
  auto z = conv_additive(zeros(1.0 / 64, 257), abel_kernel(), -64, 300);
  for (double v : z.value) CHECK(v == 0.0);

  // E = 1 on [0, 1], K = e^{-y} on y >= 0:  (E*K)(y) = e^{-y} (e^{min(y,1)} - 1)
  const double h = 1.0 / 512;
  RemainderProfile E = zeros(h, 513);
  for (double& e : E.E) e = 1.0;
  auto c = conv_additive(E, cesaro_riesz(0.0), 0, 2048);
  for (std::size_t i = 0; i < c.y.size(); i += 37) {
    double y = c.y[i], want = std::exp(-y) * (std::exp(std::min(y, 1.0)) - 1.0);
    CHECK(std::abs(c.value[i] - want) < 5 * h);
  }
}

TEST_CASE("b constant: zero remainder, rational primes, extra prime") {
  ConvSamples s;
  s.h = 0.01;
  for (int i = 0; i <= 100; ++i) {
    s.y.push_back(i * 0.01);
    s.value.push_back(0.0);
  }
  auto b0 = b_constant(s, abel_kernel(), 1.0);
  CHECK(b0.b == 0.0);
  CHECK(b0.c == -1.0);

  auto b = b_constant(*rational().system, abel_kernel(), 1.0, 1e6);
  CHECK(std::abs(b.b - (special::euler_gamma - 1.0)) < 5e-3);
  CHECK(std::abs(b.c + special::euler_gamma) < 5e-3);

  auto q = build("rational_plus_prime", {{"q", "1.5"}, {"x_max", "1e6"}});
  auto bq = b_constant(*q.system, abel_kernel(), 3.0, 1e6);
  auto mq = mertens_constant(*q.system, 1e6);
  CHECK(std::abs(bq.c - mq.c_harmonic) < 5e-3);
  CHECK(std::abs(bq.c - (-special::euler_gamma + 2 * std::log(1.5))) < 5e-3);
}

TEST_CASE("integral of E*K equals K^(0) times the integral of E (rational, Abel)") {
  const auto& sys = *rational().system;
  RemainderProfile E = remainder_profile(sys, 1.0);
  auto ca = conv_average(sys, E, abel_kernel(), ConvRange::truncated);
  double I = 0.0;
  for (std::size_t q = 1; q < ca.primary.y.size(); ++q)
    I += 0.5 * (ca.primary.y[q] - ca.primary.y[q - 1]) * (ca.primary.value[q] + ca.primary.value[q - 1]);
  CHECK(std::abs(I - (special::euler_gamma - 1.0)) < 5e-3);
  // the two routes to E*K agree; sampling a step function makes the grid route first order in h
  CHECK(ca.relative_gap < 2 * E.h);
}

TEST_CASE("the two routes to E*K agree to 1e-6 relative on smooth E") {
  // trapezoid error on sampled E is second order: the gap drops 4x per halving of h,
  // and 1e-6 relative is reached at h = 2^-10
  for (const char* name : {"ex51", "ex53"}) {
    double prev = 0.0;
    for (const char* h : {"0.001953125", "0.0009765625"}) {
      auto sc = build(name, {{"step_h", h}, {"y_max", "20"}});
      auto ca = conv_average(*sc.system, remainder_profile(*sc.system), abel_kernel());
      if (prev > 0.0) {
        CHECK(ca.relative_gap <= 1e-6);
        CHECK(prev / ca.relative_gap == doctest::Approx(4.0).epsilon(0.1));
      }
      prev = ca.relative_gap;
    }
  }
}

TEST_CASE("decay and L1 diagnostics: zero, rational, cosine example") {
  ConvSamples zero;
  zero.h = 1.0 / 16;
  for (int i = 0; i <= 16 * 40; ++i) {
    zero.y.push_back(i / 16.0);
    zero.value.push_back(0.0);
  }
  auto dz = decay_diagnostic(zero);
  for (const auto& w : dz.windows) CHECK(w.value == 0.0);
  auto lz = l1_diagnostic(zero);
  for (const auto& w : lz.cumulative) CHECK(w.value == 0.0);
  CHECK(lz.consistent);

  const auto& sys = *rational().system;
  auto ca = conv_average(sys, remainder_profile(sys, 1.0), abel_kernel());
  auto dr = decay_diagnostic(ca.primary);
  REQUIRE(dr.windows.size() >= 3);
  for (std::size_t j = 2; j < dr.windows.size(); ++j) CHECK(dr.windows[j].value < dr.windows[j - 1].value);
  CHECK(l1_diagnostic(ca.primary).consistent);

  auto ex = build("ex53", {{"y_max", "64"}, {"step_h", "0.0625"}});
  auto ce = conv_average(*ex.system, remainder_profile(*ex.system), abel_kernel());
  auto de = decay_diagnostic(ce.primary);
  CHECK_FALSE(de.consistent);
  CHECK(de.windows.back().value > 0.5 * de.windows[de.windows.size() - 2].value);
  CHECK_FALSE(l1_diagnostic(ce.primary).consistent);
}

TEST_CASE("domination T <= C (T*K)") {
  auto rep = domination_check(*rational().system, abel_kernel(), {2.0, 5.0, 10.0});
  CHECK(rep.C > 0.0);
  for (const auto& r : rep.rows) CHECK(r.holds);
  try {
    domination_check(*rational().system, cesaro_riesz(1.0), {5.0});
    FAIL("expected a domain error: no mass on y < 0");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
}

TEST_CASE("Fubini: the integral of E*K is K^(0) times the integral of E") {
  // E = sin^2(pi y / 3) on [0, 3], zero elsewhere; int E = 3/2
  const double h = 1.0 / 256;
  RemainderProfile E = zeros(h, 3 * 256 + 1);
  for (std::size_t j = 0; j < E.E.size(); ++j) E.E[j] = std::pow(std::sin(M_PI * j * h / 3.0), 2);
  for (const auto& k : {abel_kernel(), lambert_kernel(), cesaro_riesz(2.0), gaussian_kernel(0.4)}) {
    long lo = static_cast<long>(std::floor(k.lo / h)), hi = 3 * 256 + static_cast<long>(std::ceil(k.hi / h));
    auto c = conv_additive(E, k, lo, hi);
    double I = 0.0;
    for (std::size_t q = 1; q < c.y.size(); ++q) I += 0.5 * h * (c.value[q] + c.value[q - 1]);
    CHECK(I == doctest::Approx(kernel_hat0(k) * 1.5).epsilon(1e-6));
  }
}

}  // TEST_SUITE
