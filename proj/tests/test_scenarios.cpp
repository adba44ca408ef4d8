#include <doctest.h>

#include <cmath>
#include <string>

#include "beurling/counting.hpp"
#include "beurling/errors.hpp"
#include "beurling/scenarios.hpp"
#include "beurling/special.hpp"
#include "beurling/zeta.hpp"

using namespace beurling;

namespace {

ErrorCode code_of(const std::string& name, const Params& p) {
  try {
    build(name, p);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::domain;
}

}  // namespace

TEST_SUITE("scenarios") {

TEST_CASE("catalog and parameter errors") {
  for (const auto& n : scenario_names()) CHECK_FALSE(n.empty());
  CHECK(code_of("nope", {}) == ErrorCode::unknown_scenario);
  CHECK(code_of("rational", {{"bogus", "1"}}) == ErrorCode::config);
  CHECK(code_of("rational", {{"x_max", "ten"}}) == ErrorCode::config);
  CHECK(code_of("ex52", {{"A", "1.5"}}) == ErrorCode::parameter);
  CHECK(code_of("explicit", {}) == ErrorCode::config);
  CHECK(code_of("explicit", {{"primes", "0.5, 2"}}) == ErrorCode::parameter);
  try {
    build("ex52", {{"A", "1.5"}});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("positivity threshold") != std::string::npos);
  }
}

TEST_CASE("rational and explicit lists") {
  auto r = build("rational", {{"x_max", "1000"}});
  CHECK(counting_N(*r.system, 10.0) == 10.0);
  CHECK(r.spec.declared.at("a") == 1.0);
  CHECK(r.spec.declared.at("c") == doctest::Approx(-special::euler_gamma));
  auto e = build("explicit", {{"primes", "2, 3"}, {"x_max", "100"}});
  int count = 0;
  for (double a = 1; a <= 100; a *= 2)
    for (double b = a; b <= 100; b *= 3) ++count;
  CHECK(counting_N(*e.system, 100.0) == count);
}

TEST_CASE("cosine example: Pi(e^30) against its two-term asymptotic") {
  auto ex = build("ex53");
  double y = 30.0;
  double lhs = prime_Pi(*ex.system, std::exp(y)) * y / std::exp(y);
  double rhs = 1.0 + std::sqrt(2.0) / 2 * std::cos(y - M_PI / 4);
  CHECK(std::abs(lhs - rhs) <= 5.0 / y);
  CHECK(ex.spec.flags.at(kFlagPNT) == Expect::fails);
  CHECK(ex.spec.flags.at(kFlagMox) == Expect::holds);
  CHECK(ex.spec.flags.at(kFlagmo1) == Expect::holds);
  CHECK(ex.spec.flags.at(kFlagRemainderL1) == Expect::fails);
}

TEST_CASE("remark54: N is the harmonic sum, so N(x) = o(x)") {
  auto r = build("remark54", {{"x_max", "1e5"}});
  double H = 0.0;
  for (int n = 1; n <= 1000; ++n) H += 1.0 / n;
  CHECK(counting_N(*r.system, 1000.5) == doctest::Approx(H).epsilon(1e-12));
  double prev = 1.0;
  for (double x : {1e2, 1e3, 1e4, 1e5}) {
    double ratio = counting_N(*r.system, x) / x;
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(std::abs(counting_N(*r.system, 1e5) - std::log(1e5) - special::euler_gamma) < 1e-4);
}

TEST_CASE("ex51: envelope sandwich; omega = 0 gives N = x") {
  auto sc = build("ex51", {{"y_max", "21"}});
  auto rep = ex51_envelope_check(sc, {std::exp(10.0), std::exp(20.0)});
  for (const auto& row : rep.rows) CHECK(row.holds);
  CHECK(rep.rows[1].middle > 0.0);
  CHECK(rep.C == 1.0);
  CHECK(rep.alpha == 1.0);

  auto flat = build("ex51", {{"omega", "zero"}, {"y_max", "8"}});
  CHECK(ex51_c(flat.omega_y) == 0.0);
  for (double x : {1.0, 2.5, 100.0, 2000.0}) CHECK(std::abs(counting_N(*flat.system, x) - x) < 1e-9 * x);
  auto rz = ex51_envelope_check(flat, {std::exp(5.0)});
  CHECK(std::abs(rz.rows[0].middle) < 1e-9);
}

TEST_CASE("ex52: bump, positivity threshold, density") {
  CHECK(ex52_phi(0.0) == 1.0);
  CHECK(ex52_phi(0.5) == 0.0);
  CHECK(ex52_phi(-0.6) == 0.0);
  // derivative by central differences
  for (double x : {-0.3, 0.1, 0.45}) {
    double d = (ex52_phi(x + 1e-6) - ex52_phi(x - 1e-6)) / 2e-6;
    CHECK(ex52_phi_prime(x) == doctest::Approx(d).epsilon(1e-6));
  }
  // g is a sum of bumps centred at n + 1/2 with half-width 1/(2n^3)
  CHECK(ex52_g(3.5) == doctest::Approx(1.0));
  CHECK(ex52_g(3.5 + 0.5 / 27 + 1e-9) == 0.0);
  CHECK(ex52_g(3.0) == 0.0);
  double lA = ex52_min_log_A();
  CHECK(lA == doctest::Approx(1810.335).epsilon(1e-6));
  CHECK(std::log(lA) == doctest::Approx(7.50).epsilon(1e-3));
  // at the threshold the constraint |f| <= y/2 is tight on [log A, ...)
  double worst = 0.0;
  for (double y = lA; y < lA + 2000; y += 0.01) worst = std::max(worst, std::abs(ex52_f(y)) / y);
  CHECK(worst <= 0.5 + 1e-9);
  auto sc = build("ex52");
  CHECK(sc.spec.declared.at("a") == doctest::Approx(std::exp(ex52_log_density(lA))));
  CHECK(std::abs(std::log(sc.spec.declared.at("a"))) < 1e-3);
}

TEST_CASE("ex53_discrete: primes are the Pi-inverse of the cosine system") {
  auto d = build("ex53_discrete", {{"k_max", "2000"}});
  REQUIRE(d.system->prime_list.has_value());
  const auto& p = d.system->prime_list->primes;
  CHECK(p.size() == 2000);
  CHECK(std::abs(ex53_Pi(p[0]) - 1.0) < 1e-10);
  CHECK(d.spec.declared.count("a_estimated") == 1);
}

TEST_CASE("ex52 dPi is a positive measure") {
  auto sc = build("ex52");
  CHECK(sc.system->pi_measure.is_positive());
  for (double v : sc.system->pi_measure.density()) CHECK(v >= 0.0);
}

TEST_CASE("ex51 omega condition omega(x^{1/n}) / omega(x) <= 1 + log n") {
  auto om = ex51_omega("loglog");
  for (double y = 1.0; y <= 1e4; y *= 1.3)
    for (int n = 1; n <= 64; ++n) CHECK(om(y / n) / om(y) <= 1.0 + std::log(static_cast<double>(n)) + 1e-12);
}

TEST_CASE("remark54: zeta_B(1) = zeta(2)") {
  auto r = build("remark54");
  // truncation at 1e6 leaves sum_{n > 1e6} n^{-2} < 1e-6
  CHECK(std::abs(zeta_from_N(*r.system, 1.0) - M_PI * M_PI / 6) <= 1e-6);
}

}  // TEST_SUITE
