#include <benchmark/benchmark.h>

#include <vector>

#include "mfgl/complexity.hpp"
#include "mfgl/gibbs.hpp"
#include "mfgl/hamiltonians.hpp"
#include "mfgl/meanfield.hpp"
#include "mfgl/transport.hpp"

namespace {

mfgl::FourierExpansion curie_weiss(int n) {
  return mfgl::build_hamiltonian({mfgl::CurieWeissSpec{2.0, n}}).expansion;
}

void BM_TruthTable(benchmark::State& state) {
  const auto f = curie_weiss(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(f.truth_table());
}
BENCHMARK(BM_TruthTable)->Arg(8)->Arg(12)->Arg(16);

void BM_W1Exact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto nu = mfgl::gibbs_measure(curie_weiss(n));
  const auto xi = mfgl::ProductMeasure(std::vector<double>(static_cast<std::size_t>(n), 0.3)).densify();
  for (auto _ : state) benchmark::DoNotOptimize(mfgl::w1_exact(nu, xi));
}
BENCHMARK(BM_W1Exact)->Arg(4)->Arg(6)->Arg(8);

void BM_GaussianWidthStreamed(benchmark::State& state) {
  const auto f = curie_weiss(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mfgl::gaussian_width_streamed(f, 256, 1));
}
BENCHMARK(BM_GaussianWidthStreamed)->Arg(10)->Arg(14);

void BM_MeanFieldIterate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = curie_weiss(n);
  const auto x0 = mfgl::CubePoint::constant(n, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(mfgl::mf_iterate(f, x0, 1.0));
}
BENCHMARK(BM_MeanFieldIterate)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
