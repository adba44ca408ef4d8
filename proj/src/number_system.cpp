#include "beurling/number_system.hpp"

#include <algorithm>
#include <cmath>

#include "beurling/errors.hpp"

namespace beurling {

AtomSeries::AtomSeries(std::vector<double> y, std::vector<double> w) : y_(std::move(y)), w_(std::move(w)) {
  std::size_t n = y_.size();
  c0_.resize(n);
  c1_.resize(n);
  c2_.resize(n);
  c3_.resize(n);
  double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = std::exp(-y_[i]);
    a0 += w_[i];
    a1 += w_[i] * e;
    a2 += w_[i] * y_[i];
    a3 += w_[i] * y_[i] * e;
    c0_[i] = a0;
    c1_[i] = a1;
    c2_[i] = a2;
    c3_[i] = a3;
  }
}

std::size_t AtomSeries::count_upto(double yq) const {
  return static_cast<std::size_t>(std::upper_bound(y_.begin(), y_.end(), yq + kAdmitSlack) - y_.begin());
}
double AtomSeries::sum(double yq) const {
  auto c = count_upto(yq);
  return c ? c0_[c - 1] : 0.0;
}
double AtomSeries::sum_over_x(double yq) const {
  auto c = count_upto(yq);
  return c ? c1_[c - 1] : 0.0;
}
double AtomSeries::sum_log(double yq) const {
  auto c = count_upto(yq);
  return c ? c2_[c - 1] : 0.0;
}
double AtomSeries::sum_log_over_x(double yq) const {
  auto c = count_upto(yq);
  return c ? c3_[c - 1] : 0.0;
}
cd AtomSeries::mellin(cd s, double yq) const {
  auto c = count_upto(yq);
  cd acc = 0.0;
  for (std::size_t i = 0; i < c; ++i) acc += w_[i] * std::exp(-s * y_[i]);
  return acc;
}

namespace {

AtomSeries series_from(std::span<const Atom> atoms) {
  std::vector<double> y, w;
  y.reserve(atoms.size());
  w.reserve(atoms.size());
  for (const Atom& a : atoms) {
    y.push_back(a.y);
    w.push_back(a.weight);
  }
  return AtomSeries(std::move(y), std::move(w));
}

}  // namespace

void NumberSystem::build_discrete() const {
  std::call_once(discrete_once_, [this] {
    if (!discrete()) throw Error(ErrorCode::domain, "table(): continuous system");
    double ymax = log_x_max;
    if (prime_list) {
      auto words = enumerate(*prime_list, std::exp(ymax));
      std::vector<double> ny, nw, my, mw, py, pw;
      ny.reserve(words.size());
      nw.reserve(words.size());
      std::vector<Atom> nat, mat;
      nat.reserve(words.size());
      for (const GIntAtom& g : words) {
        ny.push_back(g.log_value);
        nw.push_back(1.0);
        nat.push_back({g.log_value, 1.0});
        if (g.mobius_weight != 0) {
          my.push_back(g.log_value);
          mw.push_back(g.mobius_weight);
          mat.push_back({g.log_value, static_cast<double>(g.mobius_weight)});
        }
        if (g.lambda_weight > 0.0) {
          py.push_back(g.log_value);
          pw.push_back(g.lambda_weight / g.log_value);  // 1/k at p^k
        }
      }
      table_.N = AtomSeries(std::move(ny), std::move(nw));
      table_.M = AtomSeries(std::move(my), std::move(mw));
      table_.Pi = AtomSeries(std::move(py), std::move(pw));
      std::call_once(dN_once_, [&] {
        dN_ = LogGridMeasure(kDefaultStep, ymax, 0.0);
        dN_.set_atoms(std::move(nat));
      });
      std::call_once(dM_once_, [&] {
        dM_ = LogGridMeasure(kDefaultStep, ymax, 0.0);
        dM_.set_atoms(std::move(mat));
      });
    } else {
      // atomic dPi without a prime list: exact atom recursions
      table_.Pi = series_from(pi_measure.atoms());
      table_.N = series_from(dN().atoms());
      table_.M = series_from(dM().atoms());
    }
  });
}

const DiscreteTable& NumberSystem::table() const {
  build_discrete();
  return table_;
}

const LogGridMeasure& NumberSystem::dN() const {
  if (discrete() && prime_list) build_discrete();
  std::call_once(dN_once_, [this] { dN_ = dN_builder ? dN_builder() : volterra_N_from_Pi(pi_measure); });
  return dN_;
}

const LogGridMeasure& NumberSystem::dpsi() const {
  std::call_once(dpsi_once_, [this] { dpsi_ = log_weighted(pi_measure); });
  return dpsi_;
}

const LogGridMeasure& NumberSystem::dM() const {
  if (discrete() && prime_list) build_discrete();
  std::call_once(dM_once_, [this] { dM_ = dM_builder ? dM_builder() : volterra_inverse(dN()); });
  return dM_;
}

}  // namespace beurling
