#pragma once

// Hot loops over uniform grids.  Every routine exists twice: serial:: is the
// plain reference loop, omp:: partitions the *outputs* across threads.  No
// floating-point reduction crosses a thread boundary, so both produce the same
// bits for any thread count.

#include <cstddef>
#include <span>

namespace beurling::gridk {

// out[j - j_begin] = sum over k in [k_begin, k_end) with j-k in [v_lo, v_hi)
//                    of u[k] * v[j-k],   for j in [j_begin, j_end)
struct LagRange {
  std::ptrdiff_t k_begin, k_end;
  std::ptrdiff_t v_lo, v_hi;
  std::ptrdiff_t j_begin, j_end;
};

// out[j] = h * (sum_{k=0}^{j} a_k b_{j-k} - a_0 b_j / 2 - a_j b_0 / 2), j < out.size()
// i.e. the trapezoid rule for int_0^{y_j} a(w) b(y_j - w) dw.  Leading and
// trailing zeros of a and b are skipped.

namespace serial {
void lagged_products(std::span<const double> u, std::span<const double> v, const LagRange& r,
                     std::span<double> out);
void trapezoid_convolve(std::span<const double> a, std::span<const double> b, double h,
                        std::span<double> out);
}  // namespace serial

namespace omp {
void lagged_products(std::span<const double> u, std::span<const double> v, const LagRange& r,
                     std::span<double> out);
void trapezoid_convolve(std::span<const double> a, std::span<const double> b, double h,
                        std::span<double> out);
}  // namespace omp

int max_threads() noexcept;

}  // namespace beurling::gridk
