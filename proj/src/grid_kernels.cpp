#include "beurling/grid_kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace beurling::gridk {

namespace {

inline double lag_sum(const double* u, const double* v, std::ptrdiff_t j, const LagRange& r) {
  std::ptrdiff_t lo = std::max(r.k_begin, j - r.v_hi + 1);
  std::ptrdiff_t hi = std::min(r.k_end, j - r.v_lo + 1);
  double s = 0.0;
  for (std::ptrdiff_t k = lo; k < hi; ++k) s += u[k] * v[j - k];
  return s;
}

struct Support {
  std::ptrdiff_t lo, hi;  // [lo, hi), empty when lo >= hi
};

Support nonzero(std::span<const double> a) {
  std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
  std::ptrdiff_t lo = 0;
  while (lo < n && a[lo] == 0.0) ++lo;
  std::ptrdiff_t hi = n;
  while (hi > lo && a[hi - 1] == 0.0) --hi;
  return {lo, hi};
}

template <bool Parallel>
void trapezoid_impl(std::span<const double> a, std::span<const double> b, double h,
                    std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  Support sa = nonzero(a), sb = nonzero(b);
  if (sa.lo >= sa.hi || sb.lo >= sb.hi) return;
  std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
  LagRange r{sa.lo, sa.hi, sb.lo, sb.hi, sa.lo + sb.lo, std::min(n, sa.hi + sb.hi - 1)};
  if (r.j_begin >= r.j_end) return;
  auto body = [&](std::ptrdiff_t j) {
    double s = lag_sum(a.data(), b.data(), j, r);
    // half weights at the two ends of [0, y_j]
    if (j < static_cast<std::ptrdiff_t>(b.size())) s -= 0.5 * a[0] * b[j];
    if (j < static_cast<std::ptrdiff_t>(a.size())) s -= 0.5 * a[j] * b[0];
    out[j] = h * s;
  };
  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t j = r.j_begin; j < r.j_end; ++j) body(j);
  } else {
    for (std::ptrdiff_t j = r.j_begin; j < r.j_end; ++j) body(j);
  }
  if (r.j_begin == 0) out[0] = 0.0;
}

}  // namespace

namespace serial {
void lagged_products(std::span<const double> u, std::span<const double> v, const LagRange& r,
                     std::span<double> out) {
  for (std::ptrdiff_t j = r.j_begin; j < r.j_end; ++j)
    out[j - r.j_begin] = lag_sum(u.data(), v.data(), j, r);
}
void trapezoid_convolve(std::span<const double> a, std::span<const double> b, double h,
                        std::span<double> out) {
  trapezoid_impl<false>(a, b, h, out);
}
}  // namespace serial

namespace omp {
void lagged_products(std::span<const double> u, std::span<const double> v, const LagRange& r,
                     std::span<double> out) {
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t j = r.j_begin; j < r.j_end; ++j)
    out[j - r.j_begin] = lag_sum(u.data(), v.data(), j, r);
}
void trapezoid_convolve(std::span<const double> a, std::span<const double> b, double h,
                        std::span<double> out) {
  trapezoid_impl<true>(a, b, h, out);
}
}  // namespace omp

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace beurling::gridk
