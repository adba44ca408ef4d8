#include "beurling/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "beurling/errors.hpp"
#include "beurling/kernels.hpp"
#include "beurling/zeta.hpp"
#include "measure_detail.hpp"

namespace beurling {

namespace {

double check_y(const NumberSystem& sys, double y) {
  if (!(y >= 0.0)) throw Error(ErrorCode::domain, "counting functions need y >= 0");
  double slack = 1e-12 * std::max(1.0, sys.log_x_max);
  if (y > sys.log_x_max + slack)
    throw Error(ErrorCode::out_of_range, "y = " + std::to_string(y) + " beyond the system cutoff");
  return std::min(y, sys.log_x_max);
}

double check_x(const NumberSystem& sys, double x) {
  if (!(x >= 1.0)) throw Error(ErrorCode::domain, "counting functions need x >= 1");
  double y = std::log(x);
  double slack = 1e-12 * std::max(1.0, sys.log_x_max);
  if (y > sys.log_x_max + slack)
    throw Error(ErrorCode::out_of_range, "x = " + std::to_string(x) + " beyond the system cutoff");
  return std::min(y, sys.log_x_max);
}

}  // namespace

double counting_N(const NumberSystem& sys, double x) {
  double y = check_x(sys, x);
  return sys.discrete() ? sys.table().N.sum(y) : distribution_y(sys.dN(), y);
}

double prime_Pi(const NumberSystem& sys, double x) {
  double y = check_x(sys, x);
  return sys.discrete() ? sys.table().Pi.sum(y) : distribution_y(sys.pi_measure, y);
}

double chebyshev_psi(const NumberSystem& sys, double x) {
  double y = check_x(sys, x);
  return sys.discrete() ? sys.table().Pi.sum_log(y) : distribution_y(sys.dpsi(), y);
}

double psi1(const NumberSystem& sys, double x) {
  double y = check_x(sys, x);
  return sys.discrete() ? sys.table().Pi.sum_log_over_x(y) : weighted_mass(sys.dpsi(), 1.0, y);
}

double psi1_y(const NumberSystem& sys, double y) {
  y = check_y(sys, y);
  return sys.discrete() ? sys.table().Pi.sum_log_over_x(y) : weighted_mass(sys.dpsi(), 1.0, y);
}

MobiusSums mobius_summatory(const NumberSystem& sys, double x) {
  double y = check_x(sys, x);
  if (sys.discrete()) {
    const auto& M = sys.table().M;
    return {M.sum(y), M.sum_over_x(y)};
  }
  return {distribution_y(sys.dM(), y), weighted_mass(sys.dM(), 1.0, y)};
}

double integration_by_parts_check(const NumberSystem& sys, double x) {
  double Y = check_x(sys, x);
  MobiusSums ms = mobius_summatory(sys, x);
  double integral = 0.0;  // int_1^x m(u) du
  if (sys.discrete()) {
    // m is a step function between atoms
    const auto& M = sys.table().M;
    auto ys = M.y();
    auto ws = M.w();
    double m = 0.0;
    for (std::size_t k = 0; k < ys.size() && ys[k] <= Y + kAdmitSlack; ++k) {
      m += ws[k] * std::exp(-ys[k]);
      double next = (k + 1 < ys.size() && ys[k + 1] <= Y + kAdmitSlack) ? std::exp(ys[k + 1]) : x;
      integral += m * (next - std::exp(ys[k]));
    }
  } else {
    // int_0^Y G(t) e^t dt, G(t) = int_[0,t] e^{-y} dM, Gauss-Legendre per cell with
    // G evaluated exactly on the linear interpolant of the density
    const LogGridMeasure& dM = sys.dM();
    auto f = dM.density();
    double h = dM.step_h(), lam = dM.tilt() - 1.0;
    auto atoms = dM.atoms();
    static constexpr double gx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                     0.8611363115940526};
    static constexpr double gw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                     0.3478548451374538};
    std::size_t ai = 0;
    double G = 0.0;
    auto take_atoms = [&](double upto) {
      while (ai < atoms.size() && atoms[ai].y <= upto + LogGridMeasure::kAtomMergeTolerance) {
        G += atoms[ai].weight * std::exp(lam * atoms[ai].y);
        ++ai;
      }
    };
    take_atoms(0.0);
    std::size_t n = f.size();
    for (std::size_t j = 0; j + 1 < n; ++j) {
      double y0 = static_cast<double>(j) * h;
      if (y0 >= Y) break;
      double y1 = std::min(y0 + h, Y);
      double slope = (f[j + 1] - f[j]) / h;
      double e0 = std::exp(lam * y0);
      auto partial = [&](double l) {
        auto mom = detail::exp_moments(lam, l);
        return e0 * (f[j] * mom.i0 + slope * mom.i1);
      };
      double half = 0.5 * (y1 - y0), mid = 0.5 * (y1 + y0);
      for (int q = 0; q < 4; ++q) {
        double t = mid + half * gx[q];
        integral += gw[q] * half * std::exp(t) * (G + partial(t - y0));
      }
      G += partial(y1 - y0);
      take_atoms(y1);
    }
  }
  return std::abs(ms.M - x * ms.m + integral);
}

RemainderProfile remainder_profile(const NumberSystem& sys, double a) {
  RemainderProfile p;
  p.a = std::isnan(a) ? resolve_density(sys) : a;
  if (sys.discrete()) {
    p.h = kDefaultStep;
    auto n = static_cast<std::size_t>(std::floor(sys.log_x_max / p.h + 1e-9)) + 1;
    const auto& N = sys.table().N;
    p.E.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      double y = static_cast<double>(j) * p.h;
      p.E[j] = N.sum(y) * std::exp(-y) - p.a;
    }
  } else {
    const LogGridMeasure& dN = sys.dN();
    p.h = dN.step_h();
    p.E = normalized_distribution(dN);
    for (double& e : p.E) e -= p.a;
  }
  return p;
}

double ls_slope(const std::vector<double>& u, const std::vector<double>& v) {
  double n = static_cast<double>(u.size());
  double mu = std::accumulate(u.begin(), u.end(), 0.0) / n;
  double mv = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    sxy += (u[i] - mu) * (v[i] - mv);
    sxx += (u[i] - mu) * (u[i] - mu);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

MertensReport mertens_constant(const NumberSystem& sys, double X, double tol) {
  MertensReport r;
  double Y = check_x(sys, X);
  r.X = X;
  r.a = resolve_density(sys);
  if (!(r.a > 0.0)) throw Error(ErrorCode::domain, "Mertens constant needs a positive density a");
  double a = r.a;

  auto harmonic = [&](double y) {
    return sys.discrete() ? sys.table().N.sum_over_x(y) : weighted_mass(sys.dN(), 1.0, y);
  };
  r.c_harmonic = -(harmonic(Y) - a * Y) / a;

  // int_0^Y E(y) dy
  double IE = 0.0;
  RemainderProfile prof = remainder_profile(sys, a);
  if (sys.discrete()) {
    // N is constant between atoms: int e^{-y} N(e^y) dy piece by piece
    const auto& N = sys.table().N;
    auto ys = N.y();
    auto ws = N.w();
    double cnt = 0.0;
    for (std::size_t k = 0; k < ys.size() && ys[k] <= Y + kAdmitSlack; ++k) {
      cnt += ws[k];
      double next = (k + 1 < ys.size() && ys[k + 1] <= Y + kAdmitSlack) ? ys[k + 1] : Y;
      IE += cnt * (std::exp(-ys[k]) - std::exp(-next));
    }
    IE -= a * Y;
  } else {
    double h = prof.h;
    auto full = static_cast<std::size_t>(std::floor(Y / h + 1e-9));
    full = std::min(full, prof.E.size() - 1);
    for (std::size_t j = 0; j < full; ++j) IE += 0.5 * h * (prof.E[j] + prof.E[j + 1]);
    double ell = Y - static_cast<double>(full) * h;
    if (ell > 0 && full + 1 < prof.E.size()) {
      double e1 = prof.E[full] + (prof.E[full + 1] - prof.E[full]) * ell / h;
      IE += 0.5 * ell * (prof.E[full] + e1);
    }
  }
  r.c_integral = -1.0 - IE / a;

  // tail of int E beyond Y, from the last window's mean |E| and the decay model
  double mean_abs = 0.0;
  int cnt = 0;
  for (std::size_t j = 0; j < prof.E.size(); ++j) {
    double y = static_cast<double>(j) * prof.h;
    if (y >= 0.5 * Y && y <= Y) {
      mean_abs += std::abs(prof.E[j]);
      ++cnt;
    }
  }
  mean_abs = cnt ? mean_abs / cnt : 0.0;
  switch (sys.remainder_decay) {
    case DecayModel::exponential: r.tail_bound = mean_abs; break;
    case DecayModel::power:
      r.tail_bound = sys.decay_power > 1.0 ? mean_abs * Y / (sys.decay_power - 1.0)
                                           : std::numeric_limits<double>::infinity();
      break;
    default: r.tail_bound = std::numeric_limits<double>::infinity();
  }

  r.c_kernel = b_constant(sys, abel_kernel(), a, X).c;

  std::vector<double> us, vs;
  for (int i = 0; i <= 64; ++i) {
    double y = 0.5 * Y + 0.5 * Y * i / 64.0;
    us.push_back(y);
    vs.push_back(-(harmonic(y) - a * y) / a);
  }
  r.harmonic_slope = ls_slope(us, vs);

  r.max_gap = std::max({std::abs(r.c_integral - r.c_harmonic), std::abs(r.c_integral - r.c_kernel),
                        std::abs(r.c_harmonic - r.c_kernel)});
  r.agreement_flag = r.max_gap <= tol;
  return r;
}

std::vector<PntBoundRow> pnt_bound_check(const NumberSystem& sys, const std::vector<double>& x_list) {
  std::vector<PntBoundRow> rows;
  for (double x : x_list) {
    if (!(x > 1.0)) throw Error(ErrorCode::domain, "bound check needs x > 1");
    PntBoundRow r;
    r.x = x;
    r.N = counting_N(sys, x);
    double s = 1.0 + 1.0 / std::log(x);
    r.bound = M_E * x * zeta_from_Pi(sys, s).real();
    r.holds = r.N <= r.bound;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace beurling
