#include "beurling/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "beurling/errors.hpp"
#include "beurling/special.hpp"
#include "quadrature.hpp"

namespace beurling {

using special::euler_gamma;

MellinEvaluator make_evaluator(const NumberSystem& sys, TailModel tail) {
  MellinEvaluator ev;
  ev.measure = &sys.dN();
  ev.truncation_X = std::exp(std::min(sys.log_x_max, ev.measure->y_max()));
  ev.tail_model = tail;
  if (tail == TailModel::linear_density) {
    if (!sys.density_a)
      throw Error(ErrorCode::domain, "linear-density tail needs a declared density a");
    ev.a = *sys.density_a;
  }
  return ev;
}

cd zeta_from_N(const MellinEvaluator& ev, cd s) {
  if (!ev.measure) throw Error(ErrorCode::domain, "evaluator without a measure");
  if (ev.tail_model == TailModel::none && s.real() <= 1.0)
    throw Error(ErrorCode::divergence, "int x^{-s} dN diverges for Re s <= 1");
  // the linear tail carries the pole; with a = 0 there is none
  if (s == cd(1.0, 0.0) && ev.a != 0.0) throw Error(ErrorCode::domain, "zeta pole at s = 1");
  double Y = std::log(ev.truncation_X);
  cd v = weighted_mass(*ev.measure, s, Y);
  if (ev.tail_model == TailModel::linear_density && ev.a != 0.0) v += ev.a * std::exp((1.0 - s) * Y) / (s - 1.0);
  return v;
}

cd zeta_from_N(const NumberSystem& sys, cd s) {
  return zeta_from_N(make_evaluator(sys, sys.density_a ? TailModel::linear_density : TailModel::none), s);
}

cd log_zeta_from_Pi(const NumberSystem& sys, cd s) {
  if (s.real() <= 1.0) throw Error(ErrorCode::divergence, "int x^{-s} dPi diverges for Re s <= 1");
  double Y = std::min(sys.log_x_max, sys.pi_measure.y_max());
  cd v = weighted_mass(sys.pi_measure, s, Y);
  if (sys.pi_tail) v += sys.pi_tail(s);
  return v;
}

cd zeta_from_Pi(const NumberSystem& sys, cd s) { return std::exp(log_zeta_from_Pi(sys, s)); }

double identity_residual(const NumberSystem& sys, cd s) {
  return std::abs(zeta_from_N(sys, s) - zeta_from_Pi(sys, s));
}

cd log_derivative(const NumberSystem& sys, cd s) {
  if (s.real() <= 1.0) throw Error(ErrorCode::divergence, "int x^{-s} dpsi diverges for Re s <= 1");
  double Y = std::min(sys.log_x_max, sys.pi_measure.y_max());
  cd v = weighted_mass(sys.dpsi(), s, Y);
  if (sys.psi_tail) v += sys.psi_tail(s);
  return v;
}

std::vector<double> dyadic_sigmas(int j_lo, int j_hi) {
  std::vector<double> v;
  for (int j = j_lo; j <= j_hi; ++j) v.push_back(1.0 + std::ldexp(1.0, -j));
  return v;
}

DensityEstimate density_a(const NumberSystem& sys) {
  DensityEstimate d;
  d.sigmas = dyadic_sigmas();
  for (double s : d.sigmas) d.values.push_back((s - 1.0) * zeta_from_Pi(sys, s).real());
  // Richardson in delta = sigma - 1, halving steps
  const int levels = 3;
  std::vector<std::vector<double>> T(d.values.size());
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    T[i].push_back(d.values[i]);
    for (int k = 1; k <= levels && static_cast<std::size_t>(k) <= i; ++k) {
      double p = std::ldexp(1.0, k);
      T[i].push_back((p * T[i][k - 1] - T[i - 1][k - 1]) / (p - 1.0));
    }
  }
  const auto& last = T.back();
  const auto& prev = T[T.size() - 2];
  d.estimate = last.back();
  d.spread = std::max(std::abs(last.back() - prev.back()), std::abs(last.back() - last[last.size() - 2]));
  return d;
}

double resolve_density(const NumberSystem& sys) {
  return sys.density_a ? *sys.density_a : density_a(sys).estimate;
}

std::string classify_exponent(double e) {
  if (std::abs(e + 1.0) <= 0.1) return "pole";
  if (std::abs(e + 0.5) <= 0.1) return "sqrt";
  if (e >= -0.05) return "bounded";
  return "inconclusive";
}

ProbeReport boundary_probe(const AnalyticFn& F, const std::vector<double>& t0s,
                           const std::vector<double>& sigma_list) {
  if (sigma_list.size() < 4) throw Error(ErrorCode::domain, "probe needs at least 4 sigma values");
  for (std::size_t i = 0; i < sigma_list.size(); ++i) {
    if (!(sigma_list[i] > 1.0)) throw Error(ErrorCode::domain, "probe sigmas must exceed 1");
    if (i && !(sigma_list[i] < sigma_list[i - 1]))
      throw Error(ErrorCode::domain, "probe sigmas must decrease toward 1");
  }
  ProbeReport rep;
  rep.sigma_list = sigma_list;
  if (!t0s.empty()) {
    rep.t_lo = *std::min_element(t0s.begin(), t0s.end());
    rep.t_hi = *std::max_element(t0s.begin(), t0s.end());
  }
  std::size_t m = sigma_list.size();
  for (double t0 : t0s) {
    ProbePoint p;
    p.t0 = t0;
    std::vector<double> lx(m), ly(m);
    for (std::size_t i = 0; i < m; ++i) {
      cd v = F(cd(sigma_list[i], t0));
      p.values.push_back(v);
      lx[i] = std::log(sigma_list[i] - 1.0);
      ly[i] = std::log(std::abs(v));
    }
    double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
    double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < m; ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    p.exponent = sxy / sxx;
    for (std::size_t i = 0; i < m; ++i)
      p.fit_residual = std::max(p.fit_residual, std::abs(ly[i] - (my + p.exponent * (lx[i] - mx))));
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < m; ++i) {
      inc = inc && ly[i] > ly[i - 1];
      dec = dec && ly[i] < ly[i - 1];
    }
    p.monotone = inc || dec;
    double d_first = std::abs(p.values[1] - p.values[0]);
    double d_last = std::abs(p.values[m - 1] - p.values[m - 2]);
    p.cauchy_ratio = d_first > 0 ? d_last / d_first : 0.0;
    p.cls = classify_exponent(p.exponent);
    if ((p.cls == "pole" || p.cls == "sqrt") && !p.monotone) p.cls = "inconclusive";
    rep.points.push_back(std::move(p));
  }
  return rep;
}

AnalyticFn named_function(const std::string& name, NumberSystemPtr sys) {
  if (name == "rational_zeta") return [](cd s) { return special::riemann_zeta(s); };
  if (name == "rational_zeta_minus_pole")
    return [](cd s) { return special::riemann_zeta(s) - 1.0 / (s - 1.0); };
  if (name == "ex53_zeta") return [](cd s) { return ex53_zeta(s); };
  if (name == "ex53_zeta_minus_pole") {
    double a = ex53_density();
    return [a](cd s) { return ex53_zeta(s) - a / (s - 1.0); };
  }
  if (name == "system_zeta") {
    if (!sys) throw Error(ErrorCode::config, "system_zeta needs a scenario");
    return [sys](cd s) { return zeta_from_Pi(*sys, s); };
  }
  throw Error(ErrorCode::config, "unknown probe function '" + name + "'");
}

// ---- cosine example ------------------------------------------------------

namespace {

cd cexpm1(cd w) {
  if (std::abs(w) > 1e-2) return std::exp(w) - 1.0;
  cd term = w, sum = w;
  for (int k = 2; k < 12; ++k) {
    term *= w / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

// int_a^b of a complex integrand, real and imaginary parts separately
cd cquad(const std::function<cd(double)>& f, double a, double b) {
  double re = quad::finite([&](double y) { return f(y).real(); }, a, b, 1e-15);
  double im = quad::finite([&](double y) { return f(y).imag(); }, a, b, 1e-15);
  return {re, im};
}

// (e^{-z y}(1 + cos y) - 2) / y without cancellation near y = 0
cd subtracted(cd z, double y) {
  double half = std::sin(0.5 * y);
  return (cexpm1(-z * y) * (1.0 + std::cos(y)) - 2.0 * half * half) / y;
}

void check_branch(cd s) {
  cd z = s - 1.0;
  if (z == cd(0.0, 0.0)) throw Error(ErrorCode::domain, "pole at s = 1");
  if (z.real() <= 0.0 && (z.imag() == 1.0 || z.imag() == -1.0))
    throw Error(ErrorCode::branch, "s on a branch cut of sqrt(1 + (s-1)^2)");
}

}  // namespace

cd ex53_G(cd s) {
  cd z = s - 1.0;
  const double L = kEx53Start;
  cd fp = cquad([&](double y) { return subtracted(z, y); }, 0.0, L) + 2.0 * std::log(L);
  return -fp - 2.0 * euler_gamma;
}

cd ex53_G_ein(cd s) {
  cd z = s - 1.0;
  const double L = kEx53Start;
  const cd i(0.0, 1.0);
  return -2.0 * euler_gamma - 2.0 * std::log(L) + special::ein(z * L) + 0.5 * special::ein((z - i) * L) +
         0.5 * special::ein((z + i) * L);
}

cd ex53_G_as_printed(cd s) {
  cd z = s - 1.0;
  const double top = std::exp(2.0);
  cd fp = cquad([&](double y) { return subtracted(z, y); }, 0.0, 1.0) +
          cquad([&](double y) { return std::exp(-z * y) * (1.0 + std::cos(y)) / y; }, 1.0, top);
  return -fp + 2.0 * euler_gamma;
}

cd ex53_zeta(cd s) {
  check_branch(s);
  cd z = s - 1.0;
  const cd i(0.0, 1.0);
  return std::exp(ex53_G_ein(s)) / (z * std::sqrt(z - i) * std::sqrt(z + i));
}

cd ex53_log_zeta(cd s) { return ex53_pi_tail(s, kEx53Start); }

cd ex53_pi_tail(cd s, double Y) {
  cd z = s - 1.0;
  const cd i(0.0, 1.0);
  if (z.real() <= 0.0) throw Error(ErrorCode::divergence, "tail needs Re s > 1");
  return special::e1(z * Y) + 0.5 * special::e1((z - i) * Y) + 0.5 * special::e1((z + i) * Y);
}

cd ex53_psi_tail(cd s, double Y) {
  cd z = s - 1.0;
  const cd i(0.0, 1.0);
  if (z.real() <= 0.0) throw Error(ErrorCode::divergence, "tail needs Re s > 1");
  return std::exp(-z * Y) / z + 0.5 * (std::exp(-(z - i) * Y) / (z - i) + std::exp(-(z + i) * Y) / (z + i));
}

double ex53_Pi(double x) {
  const double L = kEx53Start;
  if (x <= 2.0) return 0.0;
  double Y = std::log(x);
  const cd w(-1.0, -1.0);  // -(1+i)
  return special::ei(Y) - special::ei(L) + (special::e1(w * L) - special::e1(w * Y)).real();
}

double ex53_density() { return std::exp(ex53_G_ein(1.0).real()); }

}  // namespace beurling
