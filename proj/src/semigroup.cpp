#include "beurling/semigroup.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "beurling/errors.hpp"

namespace beurling {

PrimeSystem make_prime_system(std::vector<double> primes, PrimeSystem::Source source) {
  if (primes.empty()) throw Error(ErrorCode::parameter, "empty prime list");
  std::sort(primes.begin(), primes.end());
  if (!(primes.front() > 1.0)) throw Error(ErrorCode::parameter, "generalized primes must exceed 1");
  for (double p : primes)
    if (!std::isfinite(p)) throw Error(ErrorCode::parameter, "non-finite prime");
  return PrimeSystem{std::move(primes), source};
}

PrimeSystem rational_primes(double x_max) {
  if (x_max < 2.0) throw Error(ErrorCode::domain, "rational_primes: x_max < 2");
  auto n = static_cast<std::size_t>(std::floor(x_max));
  std::vector<std::uint8_t> composite(n + 1, 0);
  std::vector<double> primes;
  for (std::size_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<double>(i));
    for (std::size_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return PrimeSystem{std::move(primes), PrimeSystem::Source::rational_sieve};
}

PrimeSystem read_prime_list(std::istream& in) {
  std::vector<double> v;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(line.substr(b), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    auto rest = used ? line.find_first_not_of(" \t\r", b + used) : 0;
    if (!used || rest != std::string::npos)
      throw Error(ErrorCode::config, "prime list line " + std::to_string(lineno) + ": expected one number, got '" + line + "'");
    v.push_back(p);
  }
  return make_prime_system(std::move(v));
}

void write_prime_list(std::ostream& out, const PrimeSystem& ps) {
  char buf[64];
  for (double p : ps.primes) {
    std::snprintf(buf, sizeof buf, "%.17g\n", p);
    out << buf;
  }
}

std::vector<GIntAtom> enumerate(const PrimeSystem& ps, double x_max, std::size_t max_atoms) {
  if (!(x_max >= 1.0)) throw Error(ErrorCode::domain, "enumerate: x_max < 1");
  const double limit = std::log(x_max) + kAdmitSlack;
  const auto& p = ps.primes;
  std::vector<double> lp(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) lp[i] = std::log(p[i]);

  struct Frame {
    std::size_t next;   // next generator index to try (words are nondecreasing)
    std::size_t last;   // last index used (npos for the empty word)
    std::size_t first;  // first index used
    double logv;
    bool single;        // all indices equal
    bool distinct;      // all indices distinct
    int length;
  };
  constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::vector<GIntAtom> out;
  out.push_back({1.0, 0.0, 0.0, 1});
  std::vector<Frame> stack{{0, npos, npos, 0.0, true, true, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next >= p.size() || f.logv + lp[f.next] > limit) {
      stack.pop_back();
      continue;
    }
    std::size_t i = f.next++;
    Frame c;
    c.logv = f.logv + lp[i];
    c.last = i;
    c.first = f.length == 0 ? i : f.first;
    c.single = f.length == 0 || (f.single && i == f.first);
    c.distinct = f.distinct && i != f.last;
    c.length = f.length + 1;
    c.next = i;
    if (out.size() >= max_atoms)
      throw Error(ErrorCode::size, "enumeration exceeds " + std::to_string(max_atoms) +
                                       " atoms (at least that many words <= x_max)");
    int mu = c.distinct ? (c.length % 2 ? -1 : 1) : 0;
    out.push_back({std::exp(c.logv), c.logv, c.single ? lp[c.first] : 0.0, static_cast<std::int8_t>(mu)});
    stack.push_back(c);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const GIntAtom& a, const GIntAtom& b) { return a.log_value < b.log_value; });
  return out;
}

double prime_count(const PrimeSystem& ps, double x) {
  if (x < 1.0) return 0.0;
  double lim = std::log(x) + kAdmitSlack;
  auto it = std::upper_bound(ps.primes.begin(), ps.primes.end(), lim,
                             [](double l, double p) { return l < std::log(p); });
  return static_cast<double>(it - ps.primes.begin());
}

double pi_to_Pi(const PrimeSystem& ps, double x) {
  if (x < ps.primes.front()) return 0.0;
  double lx = std::log(x);
  double total = 0.0;
  for (int k = 1;; ++k) {
    double lim = lx / k + kAdmitSlack;
    auto it = std::upper_bound(ps.primes.begin(), ps.primes.end(), lim,
                               [](double l, double p) { return l < std::log(p); });
    auto c = it - ps.primes.begin();
    if (c == 0) break;
    total += static_cast<double>(c) / k;
  }
  return total;
}

PrimeSystem discretize(const std::function<double(double)>& Pi, std::size_t k_max, double x_cutoff) {
  std::vector<double> out;
  out.reserve(k_max);
  double lo = 1.0, gap = 1.0;
  boost::math::tools::eps_tolerance<double> tol(52);
  for (std::size_t k = 1; k <= k_max; ++k) {
    double target = static_cast<double>(k);
    double hi = lo + gap;
    while (Pi(hi) < target) {
      lo = hi;
      gap *= 2.0;
      hi = lo + gap;
      if (hi > x_cutoff)
        throw Error(ErrorCode::out_of_range, "discretize: Pi stays below " + std::to_string(k) +
                                                 " up to the cutoff");
    }
    std::uintmax_t iters = 200;
    auto f = [&](double x) { return Pi(x) - target; };
    auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
    double fa = std::abs(f(a)), fb = std::abs(f(b));
    double p = fa <= fb ? a : b;
    if (!out.empty() && !(p > out.back()))
      throw Error(ErrorCode::domain, "discretize: Pi not strictly increasing near k = " + std::to_string(k));
    out.push_back(p);
    gap = std::max(p - lo, 1e-12 * p);
    lo = p;
  }
  return PrimeSystem{std::move(out), PrimeSystem::Source::discretized};
}

}  // namespace beurling
