#include <doctest.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "beurling/errors.hpp"
#include "beurling/semigroup.hpp"
#include "beurling/zeta.hpp"
#include "oracles.hpp"

using namespace beurling;

TEST_SUITE("semigroup") {

TEST_CASE("enumerate: one generator, equal generators, rational primes") {
  auto two = enumerate(make_prime_system({2.0}), 10.0);
  REQUIRE(two.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(two[k].value == doctest::Approx(std::pow(2.0, k)));

  // two free generators of value 2: words of length <= 2 -> 1, 2, 2, 4, 4, 4
  auto twins = enumerate(make_prime_system({2.0, 2.0}), 5.0);
  std::vector<double> vals;
  for (const auto& a : twins) vals.push_back(a.value);
  CHECK(vals == std::vector<double>{1, 2, 2, 4, 4, 4});

  auto ten = enumerate(rational_primes(10.0), 10.0);
  REQUIRE(ten.size() == 10);
  for (int n = 1; n <= 10; ++n) CHECK(ten[n - 1].value == doctest::Approx(n));
}

TEST_CASE("enumerate: Lambda and mu annotations against trial division and the sieve") {
  auto atoms = enumerate(rational_primes(5000.0), 5000.0);
  auto mu = oracle::mobius_table(5000);
  REQUIRE(atoms.size() == 5000);
  for (const auto& a : atoms) {
    int n = static_cast<int>(std::lround(a.value));
    CHECK(a.mobius_weight == mu[n]);
    CHECK(a.lambda_weight == doctest::Approx(oracle::lambda(n)).scale(1.0));
    CHECK(std::exp(a.log_value) == doctest::Approx(a.value).epsilon(1e-14));
  }
}

TEST_CASE("enumerate: Chebyshev identity in the free semigroup") {
  // for every value v: sum over pairs of atoms (d, e) with d e = v of Lambda(d)
  // equals sum over atoms n = v of log n (values grouped, multiplicity kept)
  const std::vector<double> gens{1.5, 2.0, 2.0, 2.5, 3.7};
  const double X = 400.0;
  auto atoms = enumerate(make_prime_system(gens), X);
  auto key = [](double lv) { return std::llround(lv * 1e9); };
  std::map<long long, double> lhs, rhs;
  for (const auto& n : atoms) rhs[key(n.log_value)] += n.log_value;
  for (const auto& d : atoms)
    for (const auto& e : atoms)
      if (d.log_value + e.log_value <= std::log(X) + kAdmitSlack) lhs[key(d.log_value + e.log_value)] += d.lambda_weight;
  REQUIRE(lhs.size() == rhs.size());
  for (const auto& [k, v] : rhs) CHECK(std::abs(lhs[k] - v) <= 1e-9);
}

TEST_CASE("Pi and pi counts") {
  auto ps = rational_primes(100.0);
  CHECK(pi_to_Pi(ps, 10.0) == doctest::Approx(16.0 / 3.0));
  CHECK(pi_to_Pi(ps, 1.9) == 0.0);
  CHECK(pi_to_Pi(ps, 2.0) == 1.0);
  CHECK(prime_count(ps, 100.0) == 25.0);
  CHECK(prime_count(make_prime_system({2.0, 2.0, 3.0}), 2.5) == 2.0);
}

TEST_CASE("prime systems: invariants and text round trip") {
  CHECK_THROWS_AS(make_prime_system({1.0, 2.0}), Error);
  CHECK_THROWS_AS(make_prime_system({}), Error);
  auto ps = make_prime_system({3.0, 1.5, 2.0});
  CHECK(ps.primes == std::vector<double>{1.5, 2.0, 3.0});

  std::stringstream ss;
  write_prime_list(ss, make_prime_system({1.25, 2.0, 1e6 + 0.5}));
  auto back = read_prime_list(ss);
  CHECK(back.primes == std::vector<double>{1.25, 2.0, 1e6 + 0.5});

  std::istringstream bad("2\n3 5\n");
  try {
    read_prime_list(bad);
    FAIL("expected a config error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("enumerate: size budget") {
  try {
    enumerate(rational_primes(1e5), 1e5, 1000);
    FAIL("expected size error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::size);
  }
}

TEST_CASE("discretize: explicit inverse, cosine residual, monotone") {
  auto ps = discretize([](double x) { return std::log(x); }, 8, 1e6);
  REQUIRE(ps.primes.size() == 8);
  for (int k = 1; k <= 8; ++k) CHECK(ps.primes[k - 1] == doctest::Approx(std::exp(k)).epsilon(1e-12));
  CHECK(ps.source == PrimeSystem::Source::discretized);

  auto cs = discretize(ex53_Pi, 2000, 1e5);
  CHECK(std::abs(ex53_Pi(cs.primes[0]) - 1.0) < 1e-10);
  for (std::size_t k = 1; k < cs.primes.size(); ++k) CHECK(cs.primes[k] > cs.primes[k - 1]);
  for (int k : {10, 100, 1000}) CHECK(std::abs(ex53_Pi(cs.primes[k - 1]) - k) < 1e-8 * k);
}

TEST_CASE("enumerate: brute-force word counts and squarefree counts") {
  // exponent vectors over the generator indices, walked directly
  for (const std::vector<double>& gens : {std::vector<double>{2.0, 3.0, 5.0}, std::vector<double>{1.3, 1.3, 2.7, 4.1},
                                          std::vector<double>{1.05, 6.0}}) {
    const double X = 1000.0;
    long words = 0, squarefree = 0;
    std::function<void(std::size_t, double, bool)> walk = [&](std::size_t i, double x, bool sf) {
      if (i == gens.size()) {
        ++words;
        if (sf) ++squarefree;
        return;
      }
      int e = 0;
      for (double y = x; std::log(y) <= std::log(X) + kAdmitSlack; y *= gens[i], ++e) walk(i + 1, y, sf && e <= 1);
    };
    walk(0, 1.0, true);
    auto atoms = enumerate(make_prime_system(gens), X);
    long abs_mu = 0;
    for (const auto& a : atoms) abs_mu += a.mobius_weight != 0;
    CHECK(static_cast<long>(atoms.size()) == words);
    CHECK(abs_mu == squarefree);
  }
}

TEST_CASE("discretize: pi_P stays within 1 of Pi") {
  auto ps = discretize(ex53_Pi, 3000, 1e6);
  double worst = 0.0;
  for (std::size_t k = 0; k < ps.primes.size(); ++k) {
    double p = ps.primes[k], slack = 64 * DBL_EPSILON * static_cast<double>(k + 1);
    // just below and at each generator, where the step sits; the left limit is exactly 1,
    // so what remains is the root's few-ulp error in Pi
    worst = std::max(worst, std::abs(static_cast<double>(k) - ex53_Pi(std::nextafter(p, 0.0))) - slack);
    worst = std::max(worst, std::abs(static_cast<double>(k + 1) - ex53_Pi(p)) - slack);
  }
  CHECK(worst <= 1.0);
}

}  // TEST_SUITE
