// Serial reference against the OpenMP kernels on the oscillator grid.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "spinlab/kernels.h"

namespace {

using spinlab::kernels::Backend;
using spinlab::kernels::OscillatorStencil;

std::vector<double> randomBlock(std::size_t size) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  std::vector<double> v(size);
  for (auto& x : v) x = n(rng);
  return v;
}

constexpr std::size_t kCols = 8;

void applyKernel(benchmark::State& state, Backend backend) {
  const auto op = OscillatorStencil::make(static_cast<std::size_t>(state.range(0)), 8, 1, 1, 1);
  const auto in = randomBlock(op.size());
  std::vector<double> out(op.size());
  for (auto _ : state) {
    spinlab::kernels::apply(backend, op, in, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(op.size()));
}

void chebyshevKernel(benchmark::State& state, Backend backend) {
  const auto op = OscillatorStencil::make(static_cast<std::size_t>(state.range(0)), 8, 1, 1, 1);
  const auto x = randomBlock(op.size() * kCols);
  const auto y = randomBlock(op.size() * kCols);
  std::vector<double> z(op.size() * kCols);
  for (auto _ : state) {
    spinlab::kernels::chebyshevStep(backend, op, x, y, z, kCols, 0.5, -0.25, -1.0);
    benchmark::DoNotOptimize(z.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(op.size() * kCols));
}

void gramKernel(benchmark::State& state, Backend backend) {
  const auto rows = static_cast<std::size_t>(state.range(0) * state.range(0));
  const auto x = randomBlock(rows * kCols);
  std::vector<double> g(kCols * kCols);
  for (auto _ : state) {
    spinlab::kernels::gram(backend, x, kCols, x, kCols, rows, g);
    benchmark::DoNotOptimize(g.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows * kCols * kCols));
}

}  // namespace

BENCHMARK_CAPTURE(applyKernel, serial, Backend::Serial)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK_CAPTURE(applyKernel, openmp, Backend::OpenMP)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK_CAPTURE(chebyshevKernel, serial, Backend::Serial)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK_CAPTURE(chebyshevKernel, openmp, Backend::OpenMP)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK_CAPTURE(gramKernel, serial, Backend::Serial)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK_CAPTURE(gramKernel, openmp, Backend::OpenMP)->Arg(64)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
