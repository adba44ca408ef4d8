// Volterra marching for dN = exp(dPi) and for the convolution inverse dM.
//
// With dpsi = y dPi the log-derivative identity reads, in y-coordinates,
//     y dN = dN * dpsi.
// Atoms of dN come from the atoms of dpsi by an exact recursion (every atom
// position is a finite sum of prime-power positions).  The density part is
// marched node by node with the trapezoid rule:
//     y_j s_j = P_j + h[ s_0 d_j / 2 + sum_{0<k<j} s_k d_{j-k} + s_j d_0 / 2 ]
//               + (shifts of s by the atoms of dpsi),
// where P_j collects (atoms of dN) * (density of dpsi).  Terms containing s_j
// are moved to the left.  The inverse uses dM * dN = delta_1 the same way.
//
// The O(n^2) history sum is done block-wise: for a block of nodes [j0, j1) the
// contribution of s_1..s_{j0-1} is computed in parallel, the in-block part
// serially.  Block boundaries do not depend on the thread count.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "beurling/errors.hpp"
#include "beurling/grid_kernels.hpp"
#include "beurling/measure.hpp"
#include "measure_detail.hpp"

namespace beurling {

namespace {

constexpr std::ptrdiff_t kBlock = 256;

// pending contributions keyed by position; a sum that cancels down to
// rounding level of its terms is an exact zero (e.g. mu(4) for primes {2,3})
class AtomBook {
 public:
  void push(double y, double w) {
    auto it = book_.lower_bound(y - LogGridMeasure::kAtomMergeTolerance);
    if (it != book_.end() && it->first <= y + LogGridMeasure::kAtomMergeTolerance) {
      it->second.sum += w;
      it->second.abs += std::abs(w);
    } else {
      book_.emplace_hint(it, y, Entry{w, std::abs(w)});
    }
  }
  bool empty() const { return book_.empty(); }
  std::pair<double, double> pop() {
    auto it = book_.begin();
    double y = it->first;
    double s = std::abs(it->second.sum) <= 1e-13 * it->second.abs ? 0.0 : it->second.sum;
    book_.erase(it);
    return {y, s};
  }

 private:
  struct Entry {
    double sum, abs;
  };
  std::map<double, Entry> book_;
};

// atoms of exp(pi): y w(y) = sum_b wpsi_b w(y - z_b), w(0) = 1
std::vector<Atom> exp_atoms(std::span<const Atom> psi_atoms, double y_max) {
  std::vector<Atom> out{{0.0, 1.0}};
  if (psi_atoms.empty()) return out;
  AtomBook book;
  auto spread = [&](double y, double w) {
    for (const Atom& b : psi_atoms) {
      if (y + b.y > y_max + LogGridMeasure::kAtomMergeTolerance) break;
      book.push(y + b.y, w * b.weight);
    }
  };
  spread(0.0, 1.0);
  while (!book.empty()) {
    auto [y, s] = book.pop();
    if (s == 0.0) continue;
    double w = s / y;
    out.push_back({y, w});
    spread(y, w);
  }
  return out;
}

// atoms of the inverse: w0 w(Y) = -sum_{z>0} wN(z) w(Y - z), w(0) = 1/w0
std::vector<Atom> inverse_atoms(double w0, std::span<const Atom> rest, double y_max) {
  std::vector<Atom> out{{0.0, 1.0 / w0}};
  if (rest.empty()) return out;
  AtomBook book;
  auto spread = [&](double y, double w) {
    for (const Atom& b : rest) {
      if (y + b.y > y_max + LogGridMeasure::kAtomMergeTolerance) break;
      book.push(y + b.y, w * b.weight);
    }
  };
  spread(0.0, 1.0 / w0);
  while (!book.empty()) {
    auto [y, s] = book.pop();
    if (s == 0.0) continue;
    double w = -s / w0;
    out.push_back({y, w});
    spread(y, w);
  }
  return out;
}

// (atoms) * (density) at every node
template <bool Parallel>
std::vector<double> shifted_sum(std::span<const Atom> atoms, std::span<const double> d, double h) {
  std::size_t n = d.size();
  std::vector<double> out(n, 0.0);
  auto node = [&](std::size_t j) {
    double s = 0.0;
    for (const Atom& a : atoms) {
      auto ip = detail::shifted_node(j, n, h, a.y);
      if (ip.w0 == 0.0 && ip.w1 == 0.0) break;
      auto k = static_cast<std::size_t>(ip.k);
      s += a.weight * ip.w0 * d[k];
      if (ip.w1 != 0.0 && k + 1 < n) s += a.weight * ip.w1 * d[k + 1];
    }
    return s;
  };
  if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < n; ++j) out[j] = node(j);
  } else {
    for (std::size_t j = 0; j < n; ++j) out[j] = node(j);
  }
  return out;
}

// s_j = solve(j, R_j, c_j) where the equation is linear in s_j with
// coefficient c_j collected from the trapezoid end weight and the atom shifts
template <bool Parallel, class Solve>
std::vector<double> march(double s0, const std::vector<double>& P, std::span<const double> d,
                          std::span<const Atom> shift_atoms, double h, Solve solve) {
  auto n = static_cast<std::ptrdiff_t>(d.size());
  std::vector<double> s(n, 0.0);
  s[0] = s0;
  std::vector<double> hist(kBlock, 0.0);

  auto atom_terms = [&](std::ptrdiff_t j, double& explicit_part, double& implicit) {
    for (const Atom& a : shift_atoms) {
      auto ip = detail::shifted_node(static_cast<std::size_t>(j), static_cast<std::size_t>(n), h, a.y);
      if (ip.w0 == 0.0 && ip.w1 == 0.0) break;
      std::ptrdiff_t k = ip.k;
      if (k < j) explicit_part += a.weight * ip.w0 * s[k];
      else implicit += a.weight * ip.w0;
      if (ip.w1 != 0.0) {
        if (k + 1 < j) explicit_part += a.weight * ip.w1 * s[k + 1];
        else if (k + 1 == j) implicit += a.weight * ip.w1;
      }
    }
  };

  for (std::ptrdiff_t j0 = 1; j0 < n; j0 += kBlock) {
    std::ptrdiff_t j1 = std::min(n, j0 + kBlock);
    std::span<double> hb(hist.data(), static_cast<std::size_t>(j1 - j0));
    if constexpr (Parallel) {
      gridk::LagRange r{1, j0, 0, n, j0, j1};
      gridk::omp::lagged_products(s, d, r, hb);
    } else {
      std::fill(hb.begin(), hb.end(), 0.0);
    }
    for (std::ptrdiff_t j = j0; j < j1; ++j) {
      double acc = 0.0;
      std::ptrdiff_t kfirst = Parallel ? j0 : 1;
      for (std::ptrdiff_t k = kfirst; k < j; ++k) acc += s[k] * d[j - k];
      if constexpr (Parallel) acc = hb[j - j0] + acc;
      double R = P[j] + h * (0.5 * s[0] * d[j] + acc);
      double implicit = 0.5 * h * d[0];
      double expl = 0.0;
      atom_terms(j, expl, implicit);
      s[j] = solve(j, R + expl, implicit);
    }
  }
  return s;
}

template <bool Parallel>
LogGridMeasure n_from_pi_impl(const LogGridMeasure& pi) {
  for (const Atom& a : pi.atoms())
    if (a.y <= LogGridMeasure::kAtomMergeTolerance)
      throw Error(ErrorCode::domain, "dPi must not charge x = 1");
  LogGridMeasure psi = log_weighted(pi);
  LogGridMeasure r(pi.step_h(), pi.y_max(), pi.tilt());
  auto atoms = exp_atoms(psi.atoms(), pi.y_max());
  if (pi.has_density()) {
    double h = pi.step_h();
    auto d = psi.density();
    auto P = shifted_sum<Parallel>(atoms, d, h);
    auto s = march<Parallel>(pi.density()[0], P, d, psi.atoms(), h,
                             [h](std::ptrdiff_t j, double R, double c) {
                               return R / (static_cast<double>(j) * h - c);
                             });
    std::copy(s.begin(), s.end(), r.density().begin());
  }
  r.set_atoms(std::move(atoms));
  return r;
}

template <bool Parallel>
LogGridMeasure inverse_impl(const LogGridMeasure& dN) {
  auto all = dN.atoms();
  if (all.empty() || all.front().y > LogGridMeasure::kAtomMergeTolerance || all.front().weight == 0.0)
    throw Error(ErrorCode::not_invertible, "volterra_inverse: dN has no atom at x = 1");
  double w0 = all.front().weight;
  auto rest = all.subspan(1);
  LogGridMeasure r(dN.step_h(), dN.y_max(), dN.tilt());
  auto atoms = inverse_atoms(w0, rest, dN.y_max());
  if (dN.has_density()) {
    double h = dN.step_h();
    auto d = dN.density();
    auto P = shifted_sum<Parallel>(atoms, d, h);
    double s0 = -P[0] / w0;
    auto s = march<Parallel>(s0, P, d, rest, h,
                             [w0](std::ptrdiff_t, double R, double c) { return -R / (w0 + c); });
    std::copy(s.begin(), s.end(), r.density().begin());
  }
  r.set_atoms(std::move(atoms));
  return r;
}

}  // namespace

LogGridMeasure volterra_N_from_Pi(const LogGridMeasure& pi) { return n_from_pi_impl<true>(pi); }
LogGridMeasure volterra_inverse(const LogGridMeasure& dN) { return inverse_impl<true>(dN); }

namespace reference {
LogGridMeasure volterra_N_from_Pi(const LogGridMeasure& pi) { return n_from_pi_impl<false>(pi); }
LogGridMeasure volterra_inverse(const LogGridMeasure& dN) { return inverse_impl<false>(dN); }
}  // namespace reference

}  // namespace beurling
