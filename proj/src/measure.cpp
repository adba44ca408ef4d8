#include "beurling/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "beurling/errors.hpp"
#include "beurling/grid_kernels.hpp"
#include "measure_detail.hpp"

namespace beurling {

LogGridMeasure::LogGridMeasure(double step_h, double y_max, double tilt)
    : h_(step_h), y_max_(y_max), tilt_(tilt) {
  if (!(step_h > 0.0) || !std::isfinite(step_h))
    throw Error(ErrorCode::domain, "step_h must be positive");
  if (!(y_max >= step_h) || !std::isfinite(y_max))
    throw Error(ErrorCode::domain, "y_max must be finite and at least one step");
  auto n = static_cast<std::size_t>(std::floor(y_max / step_h + 1e-9)) + 1;
  density_.assign(n, 0.0);
}

void LogGridMeasure::add_atom(double y, double stored_weight) {
  if (y < -kAtomMergeTolerance) throw Error(ErrorCode::domain, "atom below y = 0");
  if (y > y_max_ + kAtomMergeTolerance || stored_weight == 0.0) return;
  y = std::max(y, 0.0);
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), y - kAtomMergeTolerance,
                             [](const Atom& a, double v) { return a.y < v; });
  if (it != atoms_.end() && std::abs(it->y - y) <= kAtomMergeTolerance) {
    it->weight += stored_weight;
    return;
  }
  atoms_.insert(it, Atom{y, stored_weight});
}

void LogGridMeasure::set_atoms(std::vector<Atom> atoms) {
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.y < b.y; });
  atoms_.clear();
  atoms_.reserve(atoms.size());
  for (const Atom& a : atoms) {
    if (a.y < -kAtomMergeTolerance) throw Error(ErrorCode::domain, "atom below y = 0");
    if (a.y > y_max_ + kAtomMergeTolerance) break;
    if (!atoms_.empty() && a.y - atoms_.back().y <= kAtomMergeTolerance)
      atoms_.back().weight += a.weight;
    else
      atoms_.push_back(Atom{std::max(a.y, 0.0), a.weight});
  }
  std::erase_if(atoms_, [](const Atom& a) { return a.weight == 0.0; });
}

bool LogGridMeasure::has_density() const noexcept {
  return std::any_of(density_.begin(), density_.end(), [](double v) { return v != 0.0; });
}

bool LogGridMeasure::same_grid(const LogGridMeasure& o) const noexcept {
  return std::abs(h_ - o.h_) <= 1e-15 * h_ && std::abs(tilt_ - o.tilt_) <= 1e-15;
}

bool LogGridMeasure::is_positive() const noexcept {
  return std::all_of(density_.begin(), density_.end(), [](double v) { return v >= 0.0; }) &&
         std::all_of(atoms_.begin(), atoms_.end(), [](const Atom& a) { return a.weight > 0.0; });
}

LogGridMeasure delta_one(double step_h, double y_max, double tilt) {
  LogGridMeasure m(step_h, y_max, tilt);
  m.add_atom(0.0, 1.0);
  return m;
}

namespace detail {

NodeCell node_cell(std::size_t j, std::size_t n, double h) {
  double y = static_cast<double>(j) * h;
  return {j == 0 ? 0.0 : y - 0.5 * h, j + 1 == n ? y : y + 0.5 * h};
}

Interp shifted_node(std::size_t j, std::size_t n, double h, double offset) {
  NodeCell c = node_cell(j, n, h);
  if (offset >= c.hi) return {0, 0.0, 0.0};
  if (offset <= c.lo) {
    double t = (static_cast<double>(j) * h - offset) / h;
    double k = std::floor(t);
    double th = t - k;
    if (th < 1e-13) th = 0.0;
    return {static_cast<std::ptrdiff_t>(k), 1.0 - th, th};
  }
  double ell = c.hi - offset;
  double frac = ell / (c.hi - c.lo);
  double th = 0.5 * ell / h;
  return {0, frac * (1.0 - th), frac * th};
}

}  // namespace detail

LogGridMeasure sample_density(const std::function<double(double)>& stored, double support_start,
                              double step_h, double y_max, double tilt) {
  LogGridMeasure m(step_h, y_max, tilt);
  auto d = m.density();
  std::size_t n = d.size();
  for (std::size_t j = 0; j < n; ++j) {
    detail::NodeCell c = detail::node_cell(j, n, step_h);
    if (support_start >= c.hi) continue;
    double y = m.node_y(j);
    if (support_start <= c.lo) {
      d[j] = stored(y);
    } else {
      double ell = c.hi - support_start;
      double ym = support_start + 0.5 * ell;
      d[j] = ell / (c.hi - c.lo) * stored(ym);
    }
  }
  return m;
}

namespace {

double check_y(const LogGridMeasure& mu, double y) {
  if (y < 0.0) throw Error(ErrorCode::domain, "evaluation below x = 1");
  double slack = 1e-12 * std::max(1.0, mu.y_max());
  if (y > mu.y_max() + slack)
    throw Error(ErrorCode::out_of_range,
                "log x = " + std::to_string(y) + " beyond cutoff y_max = " + std::to_string(mu.y_max()));
  return std::min(y, mu.y_max());
}

template <class T>
T integrate_exp_impl(const LogGridMeasure& mu, T lam, double y_hi) {
  y_hi = check_y(mu, y_hi);
  T acc = 0.0;
  for (const Atom& a : mu.atoms()) {
    if (a.y > y_hi + LogGridMeasure::kAtomMergeTolerance) break;
    acc += a.weight * std::exp(lam * a.y);
  }
  auto f = mu.density();
  double h = mu.step_h();
  std::size_t n = f.size();
  if (n < 2 || !mu.has_density()) return acc;
  std::size_t full = std::min(static_cast<std::size_t>(std::floor(y_hi / h + 1e-12)), n - 1);
  auto mom = detail::exp_moments(lam, h);
  T dens = 0.0;
  for (std::size_t j = 0; j < full; ++j) {
    if (f[j] == 0.0 && f[j + 1] == 0.0) continue;
    dens += std::exp(lam * (static_cast<double>(j) * h)) *
            (f[j] * mom.i0 + (f[j + 1] - f[j]) / h * mom.i1);
  }
  double ell = y_hi - static_cast<double>(full) * h;
  if (full + 1 < n && ell > 1e-14 * h) {
    auto pm = detail::exp_moments(lam, ell);
    dens += std::exp(lam * (static_cast<double>(full) * h)) *
            (f[full] * pm.i0 + (f[full + 1] - f[full]) / h * pm.i1);
  }
  return acc + dens;
}

}  // namespace

std::complex<double> integrate_exp(const LogGridMeasure& mu, std::complex<double> lambda, double y_hi) {
  return integrate_exp_impl<std::complex<double>>(mu, lambda, y_hi);
}

double distribution_y(const LogGridMeasure& mu, double y) {
  return integrate_exp_impl<double>(mu, mu.tilt(), y);
}

double distribution(const LogGridMeasure& mu, double x) {
  if (!(x >= 1.0)) throw Error(ErrorCode::domain, "distribution needs x >= 1");
  return distribution_y(mu, std::log(x));
}

std::complex<double> weighted_mass(const LogGridMeasure& mu, std::complex<double> s, double y_hi) {
  return integrate_exp_impl<std::complex<double>>(mu, mu.tilt() - s, y_hi);
}

double weighted_mass(const LogGridMeasure& mu, double s, double y_hi) {
  return integrate_exp_impl<double>(mu, mu.tilt() - s, y_hi);
}

std::vector<double> normalized_distribution(const LogGridMeasure& mu) {
  auto f = mu.density();
  std::size_t n = f.size();
  double h = mu.step_h(), t = mu.tilt();
  std::vector<double> out(n, 0.0);
  auto atoms = mu.atoms();
  std::size_t ai = 0;
  double acc = 0.0;
  auto mom = detail::exp_moments(t, h);
  double decay = std::exp(-h);
  for (std::size_t j = 0; j < n; ++j) {
    double yj = static_cast<double>(j) * h;
    if (j > 0) {
      double y0 = yj - h;
      acc = acc * decay +
            std::exp((t - 1.0) * y0 - h) * (f[j - 1] * mom.i0 + (f[j] - f[j - 1]) / h * mom.i1);
    }
    while (ai < atoms.size() && atoms[ai].y <= yj + LogGridMeasure::kAtomMergeTolerance) {
      acc += atoms[ai].weight * std::exp(t * atoms[ai].y - yj);
      ++ai;
    }
    out[j] = acc;
  }
  return out;
}

LogGridMeasure log_weighted(const LogGridMeasure& mu) {
  LogGridMeasure r(mu.step_h(), mu.y_max(), mu.tilt());
  auto src = mu.density();
  auto dst = r.density();
  for (std::size_t j = 0; j < src.size(); ++j) dst[j] = mu.node_y(j) * src[j];
  std::vector<Atom> at;
  for (const Atom& a : mu.atoms()) at.push_back({a.y, a.y * a.weight});
  r.set_atoms(std::move(at));
  return r;
}

LogGridMeasure scaled(const LogGridMeasure& mu, double factor) {
  LogGridMeasure r = mu;
  for (double& v : r.density()) v *= factor;
  std::vector<Atom> at(mu.atoms().begin(), mu.atoms().end());
  for (Atom& a : at) a.weight *= factor;
  r.set_atoms(std::move(at));
  return r;
}

LogGridMeasure add(const LogGridMeasure& a, const LogGridMeasure& b) {
  if (!a.same_grid(b)) throw Error(ErrorCode::grid_mismatch, "add: step or tilt differ");
  LogGridMeasure r(a.step_h(), std::min(a.y_max(), b.y_max()), a.tilt());
  auto d = r.density();
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = a.density()[j] + b.density()[j];
  std::vector<Atom> at(a.atoms().begin(), a.atoms().end());
  at.insert(at.end(), b.atoms().begin(), b.atoms().end());
  r.set_atoms(std::move(at));
  return r;
}

LogGridMeasure retilted(const LogGridMeasure& mu, double tilt) {
  LogGridMeasure r(mu.step_h(), mu.y_max(), tilt);
  double dt = mu.tilt() - tilt;
  auto src = mu.density();
  auto dst = r.density();
  for (std::size_t j = 0; j < src.size(); ++j) dst[j] = src[j] * std::exp(dt * mu.node_y(j));
  std::vector<Atom> at;
  for (const Atom& a : mu.atoms()) at.push_back({a.y, a.weight * std::exp(dt * a.y)});
  r.set_atoms(std::move(at));
  return r;
}

LogGridMeasure truncated(const LogGridMeasure& mu, double y_max) {
  LogGridMeasure r(mu.step_h(), std::min(y_max, mu.y_max()), mu.tilt());
  auto dst = r.density();
  std::copy_n(mu.density().begin(), dst.size(), dst.begin());
  r.set_atoms(std::vector<Atom>(mu.atoms().begin(), mu.atoms().end()));
  return r;
}

double stored_mass(const LogGridMeasure& mu) {
  double m = 0.0;
  for (const Atom& a : mu.atoms()) m += std::abs(a.weight);
  auto f = mu.density();
  for (std::size_t j = 0; j < f.size(); ++j) {
    double w = (j == 0 || j + 1 == f.size()) ? 0.5 : 1.0;
    m += w * mu.step_h() * std::abs(f[j]);
  }
  return m;
}

namespace {

template <bool Parallel>
LogGridMeasure mconvolve_impl(const LogGridMeasure& mu, const LogGridMeasure& nu) {
  if (!mu.same_grid(nu)) throw Error(ErrorCode::grid_mismatch, "mconvolve: step or tilt differ");
  double ymax = std::min(mu.y_max(), nu.y_max());
  LogGridMeasure r(mu.step_h(), ymax, mu.tilt());
  double h = mu.step_h();
  std::size_t n = r.nodes();
  auto out = r.density();

  // atom x atom
  std::vector<Atom> at;
  for (const Atom& a : mu.atoms())
    for (const Atom& b : nu.atoms()) {
      if (a.y + b.y > ymax + LogGridMeasure::kAtomMergeTolerance) break;
      at.push_back({a.y + b.y, a.weight * b.weight});
    }
  r.set_atoms(std::move(at));

  // density x density
  if (mu.has_density() && nu.has_density()) {
    auto a = mu.density().first(n), b = nu.density().first(n);
    if constexpr (Parallel)
      gridk::omp::trapezoid_convolve(a, b, h, out);
    else
      gridk::serial::trapezoid_convolve(a, b, h, out);
  }

  // atom x density: exact shift, interpolated back to the grid
  auto shift_into = [&](std::span<const Atom> atoms, std::span<const double> src) {
    if (atoms.empty()) return;
    std::size_t ns = src.size();
    auto node = [&](std::size_t j) {
      double s = 0.0;
      for (const Atom& a : atoms) {
        auto ip = detail::shifted_node(j, n, h, a.y);
        if (ip.w0 == 0.0 && ip.w1 == 0.0) break;  // atoms sorted: the rest start later
        auto k = static_cast<std::size_t>(ip.k);
        if (k < ns) s += a.weight * ip.w0 * src[k];
        if (ip.w1 != 0.0 && k + 1 < ns) s += a.weight * ip.w1 * src[k + 1];
      }
      return s;
    };
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static)
      for (std::size_t j = 0; j < n; ++j) out[j] += node(j);
    } else {
      for (std::size_t j = 0; j < n; ++j) out[j] += node(j);
    }
  };
  if (nu.has_density()) shift_into(mu.atoms(), nu.density());
  if (mu.has_density()) shift_into(nu.atoms(), mu.density());
  return r;
}

}  // namespace

LogGridMeasure mconvolve(const LogGridMeasure& mu, const LogGridMeasure& nu) {
  return mconvolve_impl<true>(mu, nu);
}

namespace reference {
LogGridMeasure mconvolve(const LogGridMeasure& mu, const LogGridMeasure& nu) {
  return mconvolve_impl<false>(mu, nu);
}
}  // namespace reference

LogGridMeasure mexp(const LogGridMeasure& nu, double tol) {
  double c = stored_mass(nu);
  if (!std::isfinite(c)) throw Error(ErrorCode::mass, "mexp: non-finite mass");
  if (c > 600.0)
    throw Error(ErrorCode::mass, "mexp: mass " + std::to_string(c) + " too large for the series");
  LogGridMeasure result = delta_one(nu.step_h(), nu.y_max(), nu.tilt());
  if (c == 0.0) return result;
  LogGridMeasure term = result;
  double bound = 1.0;  // c^n / n!
  for (int k = 1;; ++k) {
    bound *= c / k;
    if (bound < tol) break;
    term = scaled(mconvolve(term, nu), 1.0 / k);
    result = add(result, term);
  }
  return result;
}

}  // namespace beurling
