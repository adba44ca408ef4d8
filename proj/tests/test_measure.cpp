// Measure algebra on the log grid.  Oracles are closed forms, power series
// written out by hand, an integer sieve, and integrals frozen at 30 digits
// (mpmath quad), never the library's own quadrature.

#include <doctest.h>

#include <cmath>
#include <random>

#include "beurling/errors.hpp"
#include "beurling/measure.hpp"
#include "beurling/semigroup.hpp"
#include "oracles.hpp"

using namespace beurling;

namespace {

constexpr double h = 1.0 / 256;

LogGridMeasure ones(double y_max) {
  return sample_density([](double) { return 1.0; }, 0.0, h, y_max);
}

double sup_gap(const LogGridMeasure& a, const LogGridMeasure& b, double x_hi) {
  double worst = 0.0;
  for (double y = 0.0; y <= std::log(x_hi); y += 0.05)
    worst = std::max(worst, std::abs(distribution_y(a, y) - distribution_y(b, y)));
  return worst;
}

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("distribution: unit atom and unit density") {
  CHECK(distribution(delta_one(h, 5.0), 2.0) == 1.0);
  CHECK(distribution(ones(5.0), M_E) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("distribution: cosine dPi against frozen quadrature") {
  // sigma(y) = e^y (1 + cos y) / y on y >= log 2;  int_2^{e^10} (1+cos log u)/log u du
  const double frozen = 913.830629668317984122;
  auto mu = sample_density([](double y) { return std::exp(y) * (1.0 + std::cos(y)) / y; }, std::log(2.0), h, 10.0);
  double got = distribution(mu, std::exp(10.0));
  CHECK(std::abs(got - frozen) / frozen < 1e-5);
}

TEST_CASE("distribution: domain and cutoff errors") {
  auto mu = ones(3.0);
  CHECK_THROWS_AS(distribution(mu, 0.5), Error);
  CHECK_THROWS_AS(distribution(mu, std::exp(3.5)), Error);
  try {
    distribution(mu, 0.5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
  try {
    distribution(mu, 100.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::out_of_range);
  }
}

TEST_CASE("mconvolve: identity and atom products") {
  auto mu = sample_density([](double y) { return std::sin(y) + 2.0; }, 0.0, h, 4.0);
  mu.add_atom(std::log(3.0), 0.5);
  auto r = mconvolve(delta_one(h, 4.0), mu);
  REQUIRE(r.nodes() == mu.nodes());
  for (std::size_t j = 0; j < r.nodes(); ++j) CHECK(r.density()[j] == doctest::Approx(mu.density()[j]).epsilon(1e-14));
  REQUIRE(r.atoms().size() == 1);
  CHECK(r.atoms()[0].weight == doctest::Approx(0.5));

  LogGridMeasure a(h, 4.0), b(h, 4.0);
  a.add_atom(std::log(2.0), 1.0);
  b.add_atom(std::log(3.0), 1.0);
  auto ab = mconvolve(a, b);
  REQUIRE(ab.atoms().size() == 1);
  CHECK(ab.atoms()[0].y == doctest::Approx(std::log(6.0)).epsilon(1e-15));
  CHECK(ab.atoms()[0].weight == 1.0);
}

TEST_CASE("mconvolve: 1 * 1 = y") {
  auto r = mconvolve(ones(6.0), ones(6.0));
  double worst = 0.0;
  for (std::size_t j = 0; j < r.nodes(); ++j) worst = std::max(worst, std::abs(r.density()[j] - r.node_y(j)));
  CHECK(worst < 1e-12);
}

TEST_CASE("mconvolve: grid mismatch") {
  LogGridMeasure a(h, 4.0), b(h / 2, 4.0);
  try {
    mconvolve(a, b);
    FAIL("expected grid mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::grid_mismatch);
  }
}

TEST_CASE("mexp: zero, single atom, and the base of Lebesgue measure") {
  auto z = mexp(LogGridMeasure(h, 4.0));
  CHECK(distribution(z, std::exp(4.0)) == 1.0);

  const double ymax = 12 * std::log(2.0) + 0.01;
  LogGridMeasure d(h, ymax);
  d.add_atom(std::log(2.0), 1.0);
  auto e = mexp(d);
  REQUIRE(e.atoms().size() == 13);
  double fact = 1.0;
  for (int k = 0; k <= 12; ++k) {
    if (k) fact *= k;
    CHECK(e.atoms()[k].y == doctest::Approx(k * std::log(2.0)).epsilon(1e-14));
    CHECK(e.atoms()[k].weight == doctest::Approx(1.0 / fact).epsilon(1e-13));
  }

  // dnu = (1 - 1/u)/log u du, stored with tilt 1:  e^{-y} (e^y - 1)/y
  auto base = sample_density([](double y) { return y == 0 ? 1.0 : -std::expm1(-y) / y; }, 0.0, h, 4.0, 1.0);
  auto leb = mexp(base);
  for (double x : {1.5, 2.0, 5.0, 20.0, 50.0}) CHECK(std::abs(distribution(leb, x) - x) < 10 * h * x);
}

TEST_CASE("mexp: non-finite mass") {
  LogGridMeasure d(h, 2.0);
  d.density()[3] = INFINITY;
  try {
    mexp(d);
    FAIL("expected mass error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::mass);
  }
}

TEST_CASE("volterra: dPi = 0, a free prime at 2, and {2,3} against enumeration") {
  auto n0 = volterra_N_from_Pi(LogGridMeasure(h, 3.0));
  CHECK(distribution(n0, std::exp(3.0)) == 1.0);

  // dPi = sum_k delta_{2^k}/k  =>  dN = sum_k delta_{2^k},  dM = delta_1 - delta_2
  const double ymax = std::log(1000.0);
  LogGridMeasure pi(h, ymax);
  for (int k = 1; std::pow(2.0, k) <= 1000.0; ++k) pi.add_atom(k * std::log(2.0), 1.0 / k);
  auto dN = volterra_N_from_Pi(pi);
  for (int k = 0; k < 10; ++k) CHECK(distribution(dN, std::pow(2.0, k) * 1.01) == doctest::Approx(k + 1.0));
  auto dM = volterra_inverse(dN);
  CHECK(distribution(dM, 1.5) == doctest::Approx(1.0));
  for (double x : {2.5, 7.0, 100.0, 999.0}) CHECK(std::abs(distribution(dM, x)) < 1e-12);

  // primes {2,3}: brute-force count of 2^i 3^j <= x
  LogGridMeasure pi23(h, std::log(100.0));
  for (double p : {2.0, 3.0})
    for (int k = 1; std::pow(p, k) <= 100.0; ++k) pi23.add_atom(k * std::log(p), 1.0 / k);
  auto n23 = volterra_N_from_Pi(pi23);
  for (double x = 1.0; x <= 100.0; x += 0.5) {
    int count = 0;
    for (double a = 1; a <= x; a *= 2)
      for (double b = a; b <= x; b *= 3) ++count;
    CHECK(distribution(n23, x) == doctest::Approx(count).epsilon(1e-12));
  }
}

TEST_CASE("volterra_inverse: rational primes against the mu sieve") {
  const double X = 1e4;
  auto atoms = enumerate(rational_primes(X), X);
  LogGridMeasure dN(h, std::log(X));
  std::vector<Atom> list;
  for (const auto& a : atoms) list.push_back({a.log_value, 1.0});
  dN.set_atoms(std::move(list));
  auto dM = volterra_inverse(dN);
  auto mu = oracle::mobius_table(10000);
  long M = 0;
  double worst = 0.0;
  for (int n = 1; n < 10000; ++n) {
    M += mu[n];
    worst = std::max(worst, std::abs(distribution(dM, n + 0.5) - M));
  }
  CHECK(worst < 1e-9);
  CHECK(distribution(dM, 10.0) == doctest::Approx(-1.0));
}

TEST_CASE("volterra_inverse: needs the unit atom; delta_1 is its own inverse") {
  auto d = volterra_inverse(delta_one(h, 3.0));
  CHECK(distribution(d, 10.0) == 1.0);
  try {
    volterra_inverse(ones(3.0));
    FAIL("expected not_invertible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_invertible);
  }
}

TEST_CASE("inverse property and positivity on a smooth system") {
  // dPi with density e^y/y on [log 2, 6]: positive, so dN must be positive
  auto pi = sample_density([](double y) { return 1.0 / y; }, std::log(2.0), h, 6.0, 1.0);
  auto dN = volterra_N_from_Pi(pi);
  CHECK(dN.is_positive());
  double prev = -1.0;
  for (double y = 0.0; y <= 6.0; y += 0.01) {
    double v = distribution_y(dN, y);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
  auto dM = volterra_inverse(dN);
  auto unit = mconvolve(dM, dN);
  CHECK(sup_gap(unit, delta_one(h, 6.0, 1.0), std::exp(6.0)) <= 10 * h);
}

TEST_CASE("random small measures: homomorphism, commutativity, associativity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double ymax = 5.0;
  auto random_measure = [&] {
    double c0 = 0.3 * U(rng), c1 = U(rng), c2 = 0.4 * U(rng);
    auto m = sample_density([=](double y) { return c0 * (1.0 + std::sin(c1 * 7 * y)) * std::exp(-c2 * y); }, 0.0, h, ymax);
    m.add_atom(0.2 + 3 * U(rng), 0.3 * U(rng));
    return m;
  };
  for (int trial = 0; trial < 4; ++trial) {
    auto a = random_measure(), b = random_measure(), c = random_measure();
    CHECK(sup_gap(mexp(add(a, b)), mconvolve(mexp(a), mexp(b)), std::exp(ymax)) <= 10 * h);
    CHECK(sup_gap(mconvolve(a, b), mconvolve(b, a), std::exp(ymax)) <= 1e-12);
    CHECK(sup_gap(mconvolve(mconvolve(a, b), c), mconvolve(a, mconvolve(b, c)), std::exp(ymax)) <= 10 * h);
  }
}

TEST_CASE("reference and OpenMP solvers agree") {
  auto pi = sample_density([](double y) { return (1.0 + std::cos(y)) / y; }, std::log(2.0), h, 8.0, 1.0);
  pi.add_atom(std::log(1.5), 2.0 / 3.0);
  auto a = volterra_N_from_Pi(pi), b = reference::volterra_N_from_Pi(pi);
  REQUIRE(a.nodes() == b.nodes());
  double worst = 0.0;
  for (std::size_t j = 0; j < a.nodes(); ++j) worst = std::max(worst, std::abs(a.density()[j] - b.density()[j]));
  CHECK(worst <= 1e-12);
  auto m1 = volterra_inverse(a), m2 = reference::volterra_inverse(a);
  worst = 0.0;
  for (std::size_t j = 0; j < m1.nodes(); ++j) worst = std::max(worst, std::abs(m1.density()[j] - m2.density()[j]));
  CHECK(worst <= 1e-12);
  CHECK(sup_gap(mconvolve(a, m1), reference::mconvolve(a, m1), std::exp(8.0)) <= 1e-12);
}

}  // TEST_SUITE
