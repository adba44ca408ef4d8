#pragma once

// A generalized number system: dPi plus everything derived from it.
//
// Discrete systems (a prime list, or an atomic dPi) answer counting queries
// from exact atom tables; continuous systems from grid measures.  Derived
// measures are computed on first use, once, behind a guard.

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "beurling/measure.hpp"
#include "beurling/semigroup.hpp"

namespace beurling {

using cd = std::complex<double>;

// Sorted atom positions (y = log x) with weights and prefix sums.
class AtomSeries {
 public:
  AtomSeries() = default;
  AtomSeries(std::vector<double> y, std::vector<double> w);

  std::size_t size() const noexcept { return y_.size(); }
  std::span<const double> y() const noexcept { return y_; }
  std::span<const double> w() const noexcept { return w_; }

  // number of atoms with y <= yq (admission slack as in enumeration)
  std::size_t count_upto(double yq) const;
  double sum(double yq) const;           // sum w
  double sum_over_x(double yq) const;    // sum w e^{-y}
  double sum_log(double yq) const;       // sum w y
  double sum_log_over_x(double yq) const;  // sum w y e^{-y}
  // sum w e^{-s y} over all atoms with y <= yq
  cd mellin(cd s, double yq) const;

 private:
  std::vector<double> y_, w_, c0_, c1_, c2_, c3_;
};

struct DiscreteTable {
  AtomSeries N, M, Pi;
};

enum class SystemKind { discrete, continuous };
enum class DecayModel { exponential, power, unknown };

class NumberSystem {
 public:
  std::string label;
  SystemKind kind = SystemKind::continuous;
  LogGridMeasure pi_measure;
  std::optional<PrimeSystem> prime_list;
  std::optional<double> density_a;
  std::optional<double> log_A;  // log of the support-start parameter A
  double log_x_max = 0.0;       // counting cutoff

  // how |E(y)| decays, for tail bounds
  DecayModel remainder_decay = DecayModel::unknown;
  double decay_power = 1.0;

  // optional analytic extras supplied by the scenario
  std::function<double(double)> Pi_exact;     // Pi(x)
  std::function<cd(cd)> log_zeta_exact;        // int_1^inf x^{-s} dPi
  std::function<cd(cd)> pi_tail;               // int_{X}^inf x^{-s} dPi,  X = e^{log_x_max}
  std::function<cd(cd)> psi_tail;              // int_{X}^inf x^{-s} dpsi
  std::function<LogGridMeasure()> dN_builder;  // replaces the Volterra route when set
  std::function<LogGridMeasure()> dM_builder;  // replaces volterra_inverse(dN) when set

  NumberSystem() = default;
  NumberSystem(const NumberSystem&) = delete;
  NumberSystem& operator=(const NumberSystem&) = delete;

  double x_max() const { return std::exp(log_x_max); }
  bool discrete() const noexcept { return kind == SystemKind::discrete; }

  const LogGridMeasure& dN() const;
  const LogGridMeasure& dpsi() const;
  const LogGridMeasure& dM() const;
  const DiscreteTable& table() const;  // discrete systems only

 private:
  void build_discrete() const;

  mutable std::once_flag discrete_once_, dN_once_, dpsi_once_, dM_once_;
  mutable DiscreteTable table_;
  mutable LogGridMeasure dN_, dpsi_, dM_;
};

using NumberSystemPtr = std::shared_ptr<const NumberSystem>;

// step used for the atom-only grid carrier of a discrete system
inline constexpr double kDefaultStep = 1.0 / 256;

}  // namespace beurling
