// Serial reference vs OpenMP kernels on sizes typical of a Gramian ladder.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "shiftstab/generators.hpp"
#include "shiftstab/kernels.hpp"

namespace k = shiftstab::kernels;
using shiftstab::cplx;

namespace {

const shiftstab::Generator& sinc2() {
  static const auto g = shiftstab::Generator::sinc_power(2);
  return g;
}

std::vector<double> points(std::int64_t n) {
  std::vector<double> p;
  for (std::int64_t i = 0; i < n; ++i) p.push_back(static_cast<double>(i - n / 2) + 0.1 * std::sin(static_cast<double>(i)));
  return p;
}

const k::ComplexFn autocorr = [](double x) { return shiftstab::autocorrelation(sinc2(), x); };
const k::ComplexFn time_fn = [](double x) { return shiftstab::eval_time(sinc2(), x); };
const k::ComplexFn freq_fn = [](double t) { return shiftstab::eval_freq(sinc2(), t); };

template <bool Parallel>
void BM_hermitian_fill(benchmark::State& state) {
  const auto p = points(state.range(0));
  for (auto _ : state) {
    auto m = Parallel ? k::hermitian_fill(p, autocorr) : k::serial::hermitian_fill(p, autocorr);
    benchmark::DoNotOptimize(m.data());
  }
}

template <bool Parallel>
void BM_synthesize(benchmark::State& state) {
  const auto p = points(81);
  std::vector<cplx> c(p.size(), cplx(1.0, -0.5));
  std::vector<double> grid;
  for (std::int64_t i = 0; i < state.range(0); ++i) grid.push_back(-60.0 + 120.0 * static_cast<double>(i) / static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto v = Parallel ? k::synthesize(time_fn, p, c, grid) : k::serial::synthesize(time_fn, p, c, grid);
    benchmark::DoNotOptimize(v.data());
  }
}

template <bool Parallel>
void BM_periodization(benchmark::State& state) {
  std::vector<double> grid;
  for (std::int64_t i = 0; i < state.range(0); ++i) grid.push_back(static_cast<double>(i) / static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto v = Parallel ? k::periodization_values(freq_fn, 1.0, grid, 8) : k::serial::periodization_values(freq_fn, 1.0, grid, 8);
    benchmark::DoNotOptimize(v.data());
  }
}

template <bool Parallel>
void BM_cell_maxima(benchmark::State& state) {
  const k::RealFn g = [](double x) { return std::abs(shiftstab::eval_time(sinc2(), x)); };
  for (auto _ : state) {
    auto v = Parallel ? k::cell_maxima(g, -64, 128, static_cast<int>(state.range(0)), true)
                      : k::serial::cell_maxima(g, -64, 128, static_cast<int>(state.range(0)), true);
    benchmark::DoNotOptimize(v.data());
  }
}

}  // namespace

BENCHMARK(BM_hermitian_fill<false>)->Arg(41)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hermitian_fill<true>)->Arg(41)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_synthesize<false>)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_synthesize<true>)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_periodization<false>)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_periodization<true>)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cell_maxima<false>)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cell_maxima<true>)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
