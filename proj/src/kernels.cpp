#include "beurling/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "beurling/errors.hpp"
#include "beurling/special.hpp"
#include "quadrature.hpp"

namespace beurling {

namespace {

constexpr double kTail = 1e-16;

// outermost point (from 0, in direction dir) beyond which |K| stays below kTail
double support_edge(const std::function<double(double)>& K, double dir, double limit = 200.0) {
  const double step = 1.0 / 64;
  double last = 0.0;
  for (double t = 0.0; t <= limit; t += step)
    if (std::abs(K(dir * t)) >= kTail) last = t;
  return dir * (last + step);
}

void finish(Kernel& k) {
  k.lo = support_edge(k.value, -1.0);
  k.hi = support_edge(k.value, 1.0);
  double m = kernel_moment(k, std::min(k.moment_order, 4.0));
  if (!std::isfinite(m)) throw Error(ErrorCode::moment, "kernel " + k.name + ": moment integral not finite");
}

}  // namespace

double lambert_p(double u) {
  if (u < 0.1) {
    double u2 = u * u;
    return 0.5 - u / 6.0 + u * u2 / 180.0 - u * u2 * u2 / 5040.0 + u * u2 * u2 * u2 / 604800.0 -
           u * u2 * u2 * u2 * u2 / 47900160.0;
  }
  double e = std::exp(-u);
  double d = -std::expm1(-u);
  return (e * (u - 1.0) + e * e) / (d * d);
}

Kernel cesaro_riesz(double beta) {
  if (!(beta >= 0.0)) throw Error(ErrorCode::domain, "Cesaro-Riesz order must be >= 0");
  Kernel k;
  k.name = "cesaro-riesz";
  k.beta = beta;
  k.value = [beta](double y) {
    if (y < 0.0) return 0.0;
    double e = std::exp(-y);
    return beta == 0.0 ? e : e * std::pow(-std::expm1(-y), beta);
  };
  k.hat0 = 1.0 / (beta + 1.0);
  k.moment_order = std::numeric_limits<double>::infinity();
  finish(k);
  k.lo = 0.0;
  return k;
}

Kernel abel_kernel() {
  Kernel k;
  k.name = "abel";
  k.value = [](double y) {
    if (y < -6.0) return 0.0;  // e^{-y} exp(-e^{-y}) < 1e-170
    double e = std::exp(-y);
    return e * std::exp(-e);
  };
  k.hat0 = 1.0;
  k.moment_order = std::numeric_limits<double>::infinity();
  finish(k);
  return k;
}

Kernel lambert_kernel() {
  Kernel k;
  k.name = "lambert";
  k.value = [](double y) {
    if (y < -6.5) return 0.0;
    double u = std::exp(-y);
    return u * lambert_p(u);
  };
  k.hat0 = 1.0;  // int_0^inf p = [u/(1-e^u)]_0^inf
  k.moment_order = std::numeric_limits<double>::infinity();
  finish(k);
  return k;
}

Kernel gaussian_kernel(double sigma, double moment_order) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::domain, "Gaussian width must be positive");
  Kernel k;
  k.name = "custom";
  k.width = sigma;
  double norm = 1.0 / (sigma * std::sqrt(2.0 * special::pi));
  k.value = [sigma, norm](double y) { return norm * std::exp(-0.5 * (y / sigma) * (y / sigma)); };
  k.hat0 = 1.0;
  k.moment_order = moment_order;
  finish(k);
  return k;
}

Kernel parse_kernel(const std::string& spec) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  bool has_arg = colon != std::string::npos;
  double arg = 0.0;
  if (has_arg) {
    try {
      std::size_t pos = 0;
      arg = std::stod(spec.substr(colon + 1), &pos);
      if (pos != spec.size() - colon - 1) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
      throw Error(ErrorCode::config, "kernel '" + spec + "': bad parameter");
    }
  }
  if (name == "abel" && !has_arg) return abel_kernel();
  if (name == "lambert" && !has_arg) return lambert_kernel();
  if (name == "cesaro-riesz") return cesaro_riesz(has_arg ? arg : 0.0);
  if (name == "custom") return gaussian_kernel(has_arg ? arg : 0.25);
  throw Error(ErrorCode::config, "unknown kernel '" + spec + "'");
}

double kernel_hat0(const Kernel& k) {
  if (k.name == "cesaro-riesz") return 1.0 / (k.beta + 1.0);
  if (k.name == "abel" || k.name == "lambert" || k.name == "custom") return 1.0;
  return kernel_hat0_numeric(k);
}

double kernel_hat0_numeric(const Kernel& k) {
  double acc = 0.0;
  for (double a = k.lo; a < k.hi; a += 1.0) acc += quad::finite(k.value, a, std::min(a + 1.0, k.hi), 1e-15);
  return acc;
}

double kernel_moment(const Kernel& k, double alpha) {
  double acc = 0.0;
  for (double a = k.lo; a < k.hi; a += 1.0)
    acc += quad::finite([&](double y) { return std::pow(1.0 + std::abs(y), alpha) * std::abs(k.value(y)); }, a,
                        std::min(a + 1.0, k.hi), 1e-13);
  return acc;
}

ConvSamples conv_additive(const RemainderProfile& E, const Kernel& k, long i_lo, long i_hi) {
  ConvSamples out;
  out.h = E.h;
  auto n = static_cast<long>(E.E.size());
  if (i_hi < i_lo || n == 0) return out;
  double h = E.h;
  long off_lo = i_lo - (n - 1), off_hi = i_hi;
  std::vector<double> Kt(static_cast<std::size_t>(off_hi - off_lo + 1));
  for (long o = off_lo; o <= off_hi; ++o) {
    double r = static_cast<double>(o) * h;
    Kt[static_cast<std::size_t>(o - off_lo)] = (r < k.lo || r > k.hi) ? 0.0 : k.value(r);
  }
  long m = i_hi - i_lo + 1;
  out.y.resize(static_cast<std::size_t>(m));
  out.value.resize(static_cast<std::size_t>(m));
#pragma omp parallel for schedule(static)
  for (long ii = 0; ii < m; ++ii) {
    long i = i_lo + ii;
    double s = 0.0;
    for (long j = 0; j < n; ++j) {
      double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      s += w * E.E[static_cast<std::size_t>(j)] * Kt[static_cast<std::size_t>(i - j - off_lo)];
    }
    out.y[static_cast<std::size_t>(ii)] = static_cast<double>(i) * h;
    out.value[static_cast<std::size_t>(ii)] = h * s;
  }
  return out;
}

ConvAverage conv_average(const NumberSystem& sys, const RemainderProfile& E, const Kernel& k, ConvRange range) {
  if (k.moment_order < 1.0 && !k.nonnegative)
    throw Error(ErrorCode::moment,
                "kernel " + k.name + ": needs int (1+|y|)^{1+eps}|K| < inf against a remainder E = O(1)");
  double h = E.h;
  double Y = E.y_max();
  auto i_lo = static_cast<long>(std::ceil(k.lo / h - 1e-9));
  bool trunc = range == ConvRange::truncated;
  auto i_hi = static_cast<long>(std::floor((Y + (trunc ? k.hi : std::min(k.lo, 0.0))) / h + 1e-9));
  if (i_hi <= i_lo) throw Error(ErrorCode::domain, "cutoff too small for the kernel support");
  ConvAverage out;
  out.additive = conv_additive(E, k, i_lo, i_hi);

  // e^{-u} dN binned onto the grid u_j = j h
  auto n = static_cast<long>(E.E.size());
  std::vector<double> mass(static_cast<std::size_t>(n), 0.0);
  auto bin = [&](double u, double w) {
    double t = u / h;
    auto j = static_cast<long>(std::floor(t));
    if (j >= n - 1) {
      mass[static_cast<std::size_t>(n - 1)] += w;
      return;
    }
    double f = t - static_cast<double>(j);
    mass[static_cast<std::size_t>(j)] += (1.0 - f) * w;
    mass[static_cast<std::size_t>(j + 1)] += f * w;
  };
  if (sys.discrete()) {
    const auto& N = sys.table().N;
    auto ys = N.y();
    auto ws = N.w();
    for (std::size_t q = 0; q < ys.size() && ys[q] <= Y + kAdmitSlack; ++q)
      bin(std::min(ys[q], Y), ws[q] * std::exp(-ys[q]));
  } else {
    const LogGridMeasure& dN = sys.dN();
    if (std::abs(dN.step_h() - h) > 1e-15) throw Error(ErrorCode::grid_mismatch, "profile and dN grids differ");
    double lam = dN.tilt() - 1.0;
    for (const Atom& a : dN.atoms())
      if (a.y <= Y + 1e-12) bin(a.y, a.weight * std::exp(lam * a.y));
    auto f = dN.density();
    for (long j = 0; j < n && j < static_cast<long>(f.size()); ++j) {
      double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      mass[static_cast<std::size_t>(j)] += w * h * f[static_cast<std::size_t>(j)] * std::exp(lam * j * h);
    }
  }

  // F(r) and Kc(r) at r = o h, cumulated cell by cell
  long o_lo = static_cast<long>(std::floor(k.lo / h)) - 1, o_hi = i_hi;
  std::vector<double> F(static_cast<std::size_t>(o_hi - o_lo + 1), 0.0), Kc(F.size(), 0.0);
  double decay = std::exp(-h);
  for (long o = o_lo + 1; o <= o_hi; ++o) {
    double r1 = static_cast<double>(o) * h, r0 = r1 - h;
    auto idx = static_cast<std::size_t>(o - o_lo);
    double cell = 0.0, kcell = 0.0;
    if (r1 > k.lo && r0 < k.hi) {
      double a = std::max(r0, k.lo), b = std::min(r1, k.hi);
      cell = quad::fixed([&](double w) { return std::exp(w - r1) * k.value(w); }, a, b);
      kcell = quad::fixed(k.value, a, b);
    }
    F[idx] = decay * F[idx - 1] + cell;
    Kc[idx] = Kc[idx - 1] + kcell;
  }

  auto Fat = [&](long o) { return o < o_lo ? 0.0 : F[static_cast<std::size_t>(o - o_lo)]; };
  auto Kcat = [&](long o) { return o < o_lo ? 0.0 : Kc[static_cast<std::size_t>(o - o_lo)]; };
  // truncated E: drop int_Y^inf of the N-part and of the a-part
  double TY = E.E.back() + E.a;  // e^{-Y} N(e^Y)

  // past the kernel support F(o) = F(o_top) e^{-(o - o_top) h}: that part of the
  // sum is a running exponential sum G[m] = sum_{j<=m} mass_j e^{-(m-j) h}
  long o_top = std::min(o_hi, static_cast<long>(std::ceil(k.hi / h)) + 1);
  std::vector<double> G(static_cast<std::size_t>(n));
  for (long j = 0; j < n; ++j)
    G[static_cast<std::size_t>(j)] = (j ? decay * G[static_cast<std::size_t>(j - 1)] : 0.0) + mass[static_cast<std::size_t>(j)];
  double F_top = F[static_cast<std::size_t>(o_top - o_lo)];

  long m = i_hi - i_lo + 1;
  out.primary.h = h;
  out.primary.y = out.additive.y;
  out.primary.value.assign(static_cast<std::size_t>(m), 0.0);
#pragma omp parallel for schedule(static)
  for (long ii = 0; ii < m; ++ii) {
    long i = i_lo + ii;
    double s = 0.0;
    long j_max = std::min(n - 1, i - o_lo);
    long j_min = std::max(0L, i - o_top);
    for (long j = j_min; j <= j_max; ++j) s += mass[static_cast<std::size_t>(j)] * F[static_cast<std::size_t>(i - j - o_lo)];
    if (j_min > 0) {
      long mm = std::min(j_min - 1, n - 1);
      s += F_top * std::exp(-static_cast<double>(i - o_top - mm) * h) * G[static_cast<std::size_t>(mm)];
    }
    double v = s - E.a * Kcat(i);
    if (trunc) v += -TY * Fat(i - (n - 1)) + E.a * Kcat(i - (n - 1));
    out.primary.value[static_cast<std::size_t>(ii)] = v;
  }

  double sup = 0.0;
  for (std::size_t q = 0; q < out.primary.value.size(); ++q) {
    out.max_gap = std::max(out.max_gap, std::abs(out.primary.value[q] - out.additive.value[q]));
    sup = std::max(sup, std::abs(out.primary.value[q]));
  }
  out.relative_gap = sup > 0 ? out.max_gap / sup : 0.0;
  return out;
}

DecayReport decay_diagnostic(const ConvSamples& s) {
  DecayReport r;
  if (s.y.empty()) {
    r.verdict = "inconclusive: no samples";
    return r;
  }
  double y_last = s.y.back();
  // complete windows, plus a trailing partial one covering at least a quarter
  for (int j = 0; std::ldexp(1.0, j) + 0.25 * std::ldexp(1.0, j) <= y_last + 1e-12; ++j) {
    WindowStat w{std::ldexp(1.0, j), std::min(std::ldexp(1.0, j + 1), y_last), 0.0};
    for (std::size_t q = 0; q < s.y.size(); ++q)
      if (s.y[q] >= w.lo && s.y[q] <= w.hi) w.value = std::max(w.value, std::abs(s.y[q] * s.value[q]));
    r.windows.push_back(w);
  }
  std::vector<double> js, ls;
  for (std::size_t j = 0; j < r.windows.size(); ++j)
    if (r.windows[j].value > 0) {
      js.push_back(static_cast<double>(j));
      ls.push_back(std::log(r.windows[j].value));
    }
  r.slope = js.size() >= 2 ? ls_slope(js, ls) : 0.0;
  std::size_t k = r.windows.size();
  if (k < 3) {
    r.verdict = "inconclusive: fewer than three complete dyadic windows";
    return r;
  }
  double a = r.windows[k - 3].value, b = r.windows[k - 2].value, c = r.windows[k - 1].value;
  r.consistent = (b < a && c < b) || (a == 0.0 && b == 0.0 && c == 0.0);
  r.verdict = r.consistent ? "consistent with o(1/y)" : "not consistent with o(1/y)";
  return r;
}

L1Report l1_diagnostic(const ConvSamples& s) {
  L1Report r;
  if (s.y.size() < 2) {
    r.verdict = "inconclusive: no samples";
    return r;
  }
  std::vector<double> acc(s.y.size(), 0.0);
  for (std::size_t q = 1; q < s.y.size(); ++q)
    acc[q] = acc[q - 1] + 0.5 * (s.y[q] - s.y[q - 1]) * (std::abs(s.value[q - 1]) + std::abs(s.value[q]));
  double tol = 0.5 * (s.y[1] - s.y[0]);
  for (int j = 0; std::ldexp(1.0, j) <= s.y.back() + tol; ++j) {
    double target = std::ldexp(1.0, j);
    if (target < s.y.front()) continue;
    auto it = std::lower_bound(s.y.begin(), s.y.end(), target - tol);
    auto q = static_cast<std::size_t>(it - s.y.begin());
    r.cumulative.push_back({0.0, target, acc[q]});
  }
  for (std::size_t q = 1; q < r.cumulative.size(); ++q)
    r.increments.push_back(r.cumulative[q].value - r.cumulative[q - 1].value);
  std::size_t k = r.increments.size();
  if (k < 2) {
    r.verdict = "inconclusive: fewer than two complete dyadic windows";
    return r;
  }
  auto ok = [&](std::size_t i) {
    double prev = r.increments[i - 1], cur = r.increments[i];
    return cur < kL1Floor || (prev > 0 && cur <= kL1Ratio * prev);
  };
  r.consistent = ok(k - 1);
  r.verdict = r.consistent ? "consistent with L1" : "not consistent with L1";
  return r;
}

BConstant b_constant(const ConvSamples& s, const Kernel& k, double a) {
  if (!(a > 0.0)) throw Error(ErrorCode::domain, "b constant needs a > 0");
  BConstant b;
  double I = 0.0;
  for (std::size_t q = 1; q < s.y.size(); ++q) I += 0.5 * (s.y[q] - s.y[q - 1]) * (s.value[q - 1] + s.value[q]);
  b.b = I / kernel_hat0(k);
  b.c = -b.b / a - 1.0;
  b.y_hi = s.y.empty() ? 0.0 : s.y.back();
  double mean = 0.0;
  int cnt = 0;
  for (std::size_t q = 0; q < s.y.size(); ++q)
    if (s.y[q] >= 0.5 * b.y_hi) {
      mean += std::abs(s.value[q]);
      ++cnt;
    }
  b.tail = cnt ? mean / cnt : 0.0;
  return b;
}

BConstant b_constant(const NumberSystem& sys, const Kernel& k, double a, double X) {
  RemainderProfile E = remainder_profile(sys, a);
  auto keep = static_cast<std::size_t>(std::floor(std::log(X) / E.h + 1e-9)) + 1;
  if (keep < E.E.size()) E.E.resize(keep);
  return b_constant(conv_average(sys, E, k, ConvRange::truncated).primary, k, a);
}

DominationReport domination_check(const NumberSystem& sys, const Kernel& k, const std::vector<double>& y_list) {
  DominationReport rep;
  double cinv = quad::finite([&](double y) { return std::exp(y) * k.value(y); }, std::min(k.lo, 0.0), 0.0, 1e-15);
  if (!(cinv > 0.0)) throw Error(ErrorCode::domain, "kernel has no mass on y < 0");
  rep.C = 1.0 / cinv;
  RemainderProfile T = remainder_profile(sys, 0.0);
  for (double y : y_list) {
    auto i = static_cast<long>(std::llround(y / T.h));
    if (static_cast<double>(i) * T.h > T.y_max() + std::min(k.lo, 0.0))
      throw Error(ErrorCode::out_of_range, "domination check beyond the usable range");
    ConvSamples c = conv_additive(T, k, i, i);
    DominationRow row;
    row.y = static_cast<double>(i) * T.h;
    row.T = T.E[static_cast<std::size_t>(i)];
    row.TK = c.value[0];
    row.holds = row.T <= rep.C * row.TK * (1.0 + 1e-9) + 1e-12;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace beurling
