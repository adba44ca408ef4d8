// Serial reference loops against their OpenMP versions.  The outputs are
// bit-identical (checked in the unit tests); this only measures time.
//
//   OMP_NUM_THREADS=4 ./bench_kernels --benchmark_filter=Trapezoid

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "beurling/grid_kernels.hpp"
#include "beurling/measure.hpp"

using namespace beurling;

namespace {

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = U(rng);
  return v;
}

template <auto Fn>
void Trapezoid(benchmark::State& st) {
  auto n = static_cast<std::size_t>(st.range(0));
  auto a = noise(n, 1), b = noise(n, 2);
  std::vector<double> out(n);
  for (auto _ : st) {
    Fn(a, b, 1.0 / 256, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetComplexityN(st.range(0));
}

template <auto Fn>
void Lagged(benchmark::State& st) {
  auto n = static_cast<std::ptrdiff_t>(st.range(0));
  auto u = noise(static_cast<std::size_t>(n), 3), v = noise(static_cast<std::size_t>(n), 4);
  gridk::LagRange r{0, n, 0, n, n / 2, n + n / 2};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto _ : st) {
    Fn(u, v, r, out);
    benchmark::DoNotOptimize(out.data());
  }
}

// dPi of the cosine example, stored with tilt 1
LogGridMeasure cosine_pi(double y_max) {
  return sample_density([](double y) { return (1.0 + std::cos(y)) / y; }, std::log(2.0), 1.0 / 256, y_max, 1.0);
}

void VolterraReference(benchmark::State& st) {
  auto pi = cosine_pi(static_cast<double>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::volterra_N_from_Pi(pi));
}

void VolterraOpenMP(benchmark::State& st) {
  auto pi = cosine_pi(static_cast<double>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(volterra_N_from_Pi(pi));
}

void MconvolveReference(benchmark::State& st) {
  auto pi = cosine_pi(static_cast<double>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::mconvolve(pi, pi));
}

void MconvolveOpenMP(benchmark::State& st) {
  auto pi = cosine_pi(static_cast<double>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mconvolve(pi, pi));
}

}  // namespace

BENCHMARK(Trapezoid<gridk::serial::trapezoid_convolve>)->Name("Trapezoid/serial")->RangeMultiplier(4)->Range(1 << 10, 1 << 14);
BENCHMARK(Trapezoid<gridk::omp::trapezoid_convolve>)->Name("Trapezoid/omp")->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->UseRealTime();
BENCHMARK(Lagged<gridk::serial::lagged_products>)->Name("Lagged/serial")->RangeMultiplier(4)->Range(1 << 10, 1 << 14);
BENCHMARK(Lagged<gridk::omp::lagged_products>)->Name("Lagged/omp")->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->UseRealTime();
BENCHMARK(VolterraReference)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(VolterraOpenMP)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(MconvolveReference)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(MconvolveOpenMP)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
