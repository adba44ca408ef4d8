#pragma once

// Discrete generalized prime systems: the free semigroup they generate,
// Lambda/mu annotation, and discretization of a continuous Pi.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace beurling {

struct PrimeSystem {
  enum class Source { explicit_list, rational_sieve, discretized };
  std::vector<double> primes;  // nondecreasing, primes[0] > 1; equal values are distinct generators
  Source source = Source::explicit_list;
};

PrimeSystem make_prime_system(std::vector<double> primes,
                              PrimeSystem::Source source = PrimeSystem::Source::explicit_list);
PrimeSystem rational_primes(double x_max);

// line-delimited decimal text
PrimeSystem read_prime_list(std::istream& in);
void write_prime_list(std::ostream& out, const PrimeSystem& ps);

struct GIntAtom {
  double value;
  double log_value;
  double lambda_weight;  // log p for a power of a single generator, else 0
  std::int8_t mobius_weight;
};

// log_value <= log x_max + 2^-40 is admitted
inline constexpr double kAdmitSlack = 0x1p-40;

// every word over nondecreasing generator indices with product <= x_max, once,
// sorted by log_value (stable: ties keep generation order)
std::vector<GIntAtom> enumerate(const PrimeSystem& ps, double x_max,
                                std::size_t max_atoms = 40'000'000);

// Pi(x) = sum_k pi(x^{1/k}) / k
double pi_to_Pi(const PrimeSystem& ps, double x);
// pi(x), counting generators with multiplicity
double prime_count(const PrimeSystem& ps, double x);

// p_k = Pi^{-1}(k), k = 1..k_max; Pi continuous and increasing past its support
PrimeSystem discretize(const std::function<double(double)>& Pi, std::size_t k_max, double x_cutoff);

}  // namespace beurling
