#include <doctest.h>

#include <cmath>

#include "beurling/counting.hpp"
#include "beurling/errors.hpp"
#include "beurling/measure.hpp"
#include "beurling/scenarios.hpp"
#include "beurling/special.hpp"
#include "oracles.hpp"

using namespace beurling;

namespace {

const Scenario& rational() {
  static const Scenario sc = build("rational", {{"x_max", "1e6"}});
  return sc;
}

}  // namespace

TEST_SUITE("counting") {

TEST_CASE("rational counts at 10 against hand sums") {
  const auto& s = *rational().system;
  CHECK(counting_N(s, 10.0) == 10.0);
  CHECK(prime_Pi(s, 10.0) == doctest::Approx(16.0 / 3.0));
  double psi = 0.0, psi_1 = 0.0;
  for (int n = 2; n <= 10; ++n) {
    psi += oracle::lambda(n);
    psi_1 += oracle::lambda(n) / n;
  }
  CHECK(chebyshev_psi(s, 10.0) == doctest::Approx(psi).epsilon(1e-14));
  CHECK(chebyshev_psi(s, 10.0) == doctest::Approx(7.8320).epsilon(1e-4));
  CHECK(psi1(s, 10.0) == doctest::Approx(psi_1).epsilon(1e-14));
  CHECK(psi1(s, 10.0) == doctest::Approx(1.6947).epsilon(1e-4));
  CHECK(psi1_y(s, std::log(10.0)) == doctest::Approx(psi_1).epsilon(1e-14));
  CHECK(counting_N(s, 1.5) == 1.0);
  CHECK(prime_Pi(s, 1.5) == 0.0);
  CHECK(chebyshev_psi(s, 1.9) == 0.0);
  CHECK(psi1(s, 1.9) == 0.0);
  CHECK(std::abs(psi1(s, 1e6) - std::log(1e6) + special::euler_gamma) < 5e-3);
}

TEST_CASE("counting errors") {
  const auto& s = *rational().system;
  try {
    counting_N(s, 0.5);
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
  try {
    counting_N(s, 2e6);
    FAIL("expected out_of_range");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::out_of_range);
  }
}

TEST_CASE("cosine example psi against frozen quadrature") {
  auto ex = build("ex53", {{"y_max", "12"}});
  // int_2^{e^10} (1 + cos log u) du
  CHECK(chebyshev_psi(*ex.system, std::exp(10.0)) == doctest::Approx(6790.73623200098633960).epsilon(1e-5));
  CHECK(prime_Pi(*ex.system, std::exp(10.0)) == doctest::Approx(913.830629668317984122).epsilon(1e-5));
}

TEST_CASE("Mobius sums: sieve, remark54 limit, below the first prime") {
  const auto& s = *rational().system;
  auto mu = oracle::mobius_table(2000);
  long M = 0;
  double m = 0.0;
  for (int n = 1; n <= 2000; ++n) {
    M += mu[n];
    m += static_cast<double>(mu[n]) / n;
    if (n % 97 == 0 || n == 10) {
      auto got = mobius_summatory(s, n + 0.5);
      CHECK(got.M == doctest::Approx(M));
      CHECK(got.m == doctest::Approx(m).epsilon(1e-12).scale(1.0));
    }
  }
  CHECK(mobius_summatory(s, 10.0).M == -1.0);
  auto low = mobius_summatory(s, 1.5);
  CHECK(low.M == 1.0);
  CHECK(low.m == 1.0);

  auto r54 = build("remark54", {{"x_max", "1e6"}});
  CHECK(std::abs(mobius_summatory(*r54.system, 1e6).m - 6.0 / (M_PI * M_PI)) < 1e-3);
}

TEST_CASE("integration by parts identity") {
  CHECK(integration_by_parts_check(*rational().system, 100.0) <= 1e-8);
  auto r54 = build("remark54", {{"x_max", "1e4"}});
  CHECK(integration_by_parts_check(*r54.system, 1e3) <= 1e-6);
  auto two = build("explicit", {{"primes", "2"}, {"x_max", "100"}});
  CHECK(integration_by_parts_check(*two.system, 10.0) == 0.0);
}

TEST_CASE("remainder: zero for N = x, floor formula for the integers") {
  auto flat = build("ex51", {{"omega", "zero"}, {"y_max", "6"}});
  auto e0 = remainder_profile(*flat.system);
  double worst = 0.0;
  for (double e : e0.E) worst = std::max(worst, std::abs(e));
  CHECK(worst < 1e-9);

  auto small = build("rational", {{"x_max", "1e4"}});
  auto E = remainder_profile(*small.system, 1.0);
  for (std::size_t j = 0; j < E.E.size(); j += 7) {
    double y = j * E.h, x = std::exp(y);
    if (std::abs(x - std::round(x)) < 1e-9 * x) continue;
    CHECK(E.E[j] == doctest::Approx(std::floor(x) / x - 1.0).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("remainder: cosine example oscillates with envelope y^{-1/2}") {
  auto ex = build("ex53");
  auto E = remainder_profile(*ex.system);
  // sup |E| over consecutive periods, fitted against log of the window centre
  std::vector<double> u, v;
  const double period = 2 * M_PI;
  for (double lo = 8.0; lo + period <= E.y_max(); lo += period) {
    double sup = 0.0;
    for (std::size_t j = static_cast<std::size_t>(lo / E.h); j * E.h < lo + period; ++j) sup = std::max(sup, std::abs(E.E[j]));
    u.push_back(std::log(lo + period / 2));
    v.push_back(std::log(sup));
  }
  REQUIRE(u.size() >= 4);
  CHECK(std::abs(ls_slope(u, v) + 0.5) <= 0.1);
}

TEST_CASE("Mertens constant by the harmonic and integral routes") {
  auto m = mertens_constant(*rational().system, 1e6);
  CHECK(std::abs(m.c_harmonic + special::euler_gamma) < 1e-5);
  CHECK(m.agreement_flag);

  auto q = build("rational_plus_prime", {{"q", "1.5"}, {"x_max", "1e6"}});
  auto mq = mertens_constant(*q.system, 1e6);
  double want = -special::euler_gamma + std::log(1.5) / 0.5;
  CHECK(std::abs(mq.c_harmonic - want) < 1e-4);
  CHECK(mq.c_harmonic > -special::euler_gamma);

  auto flat = build("ex51", {{"omega", "zero"}, {"y_max", "14"}});
  auto mf = mertens_constant(*flat.system, std::exp(14.0));
  CHECK(std::abs(mf.c_integral + 1.0) < 1e-6);
  CHECK(std::abs(mf.c_harmonic + 1.0) < 1e-6);

  auto r54 = build("remark54", {{"x_max", "1e4"}});
  try {
    mertens_constant(*r54.system, 1e4);
    FAIL("expected domain error for a = 0");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
}

TEST_CASE("Chebyshev-type bound N(x) <= e x zeta(1 + 1/log x)") {
  auto rows = pnt_bound_check(*rational().system, {1e3});
  CHECK(rows[0].holds);
  CHECK(rows[0].N == 1000.0);
  CHECK(rows[0].bound == doctest::Approx(M_E * 1e3 * special::riemann_zeta(1.0 + 1.0 / std::log(1e3)).real()).epsilon(1e-4));
  auto two = build("explicit", {{"primes", "2"}, {"x_max", "1e6"}});
  CHECK(pnt_bound_check(*two.system, {1e6})[0].holds);
  auto ex51 = build("ex51", {{"y_max", "20"}});
  CHECK(pnt_bound_check(*ex51.system, {std::exp(20.0)})[0].holds);
}

TEST_CASE("discrete tables and the grid representation agree") {
  // the same system once from the enumeration, once through the measure algebra
  auto sc = build("explicit", {{"primes", "1.5, 2, 2, 3.25, 7"}, {"x_max", "1000"}});
  const auto& sys = *sc.system;
  const double h = sys.pi_measure.step_h();
  auto dN = volterra_N_from_Pi(sys.pi_measure);
  auto dpsi = log_weighted(sys.pi_measure);
  auto dM = volterra_inverse(dN);
  for (double x = 1.0; x <= 1000.0; x *= 1.07) {
    CHECK(std::abs(distribution(dN, x) - counting_N(sys, x)) <= 10 * h);
    CHECK(std::abs(distribution(dpsi, x) - chebyshev_psi(sys, x)) <= 10 * h);
    CHECK(std::abs(distribution(dM, x) - mobius_summatory(sys, x).M) <= 10 * h);
  }
}

TEST_CASE("monotone counting functions for a positive dPi") {
  auto ex = build("ex53", {{"y_max", "20"}});
  const auto& sys = *ex.system;
  double pN = 0, pPi = 0, ppsi = 0, ppsi1 = 0;
  for (double y = 0.0; y <= 20.0; y += 0.01) {
    double x = std::exp(y);
    double n = counting_N(sys, x), P = prime_Pi(sys, x), s = chebyshev_psi(sys, x), s1 = psi1(sys, x);
    CHECK(n >= pN);
    CHECK(P >= pPi);
    CHECK(s >= ppsi);
    CHECK(s1 >= ppsi1);
    pN = n, pPi = P, ppsi = s, ppsi1 = s1;
  }
}

TEST_CASE("harmonic sums on the integers") {
  // sum_{n <= x} 1/n - log x sits above gamma within 1/(2x) + 1/(8x^2); it
  // decreases, so c_harmonic = -(sum - log x) increases to -gamma
  double prev_c = -1e9;
  for (double X : {1e3, 1e4, 1e5, 1e6}) {
    double H = 0.0;
    for (long n = 1; n <= static_cast<long>(X); ++n) H += 1.0 / static_cast<double>(n);
    double gap = H - std::log(X) - special::euler_gamma;
    CHECK(gap >= 0.0);
    CHECK(gap <= 1.0 / (2 * X) + 1.0 / (8 * X * X));
    auto m = mertens_constant(*rational().system, X);
    CHECK(m.c_harmonic == doctest::Approx(-(H - std::log(X))).epsilon(1e-10));
    CHECK(m.c_harmonic > prev_c);
    prev_c = m.c_harmonic;
  }
}

TEST_CASE("the three Mertens estimates agree where the sharp relation holds") {
  for (const char* name : {"rational", "rational_plus_prime"}) {
    auto sc = build(name, {{"x_max", "1e6"}});
    auto m = mertens_constant(*sc.system, 1e6);
    CHECK(std::abs(m.c_integral - m.c_harmonic) <= 5e-3);
    CHECK(std::abs(m.c_kernel - m.c_harmonic) <= 5e-3);
    CHECK(std::abs(m.c_kernel - m.c_integral) <= 5e-3);
    CHECK(m.max_gap <= 5e-3);
  }
}

}  // TEST_SUITE
