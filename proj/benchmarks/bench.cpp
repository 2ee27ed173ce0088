#include <benchmark/benchmark.h>

#include <random>

#include "otfa/gabor.hpp"
#include "otfa/orlicz.hpp"
#include "otfa/psido.hpp"

using namespace otfa;

namespace {

GridSequence noise(const GridShape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  GridSequence a(shape);
  for (auto& v : a.values()) v = {g(rng), g(rng)};
  return a;
}

}  // namespace

static void BM_LuxemburgEntropy(benchmark::State& state) {
  const auto a = noise(GridShape{static_cast<std::size_t>(state.range(0))}, 1);
  const auto phi = YoungFunction::entropy();
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(a.values(), phi));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LuxemburgEntropy)->RangeMultiplier(4)->Range(64, 16384);

static void BM_LuxemburgPower(benchmark::State& state) {
  const auto a = noise(GridShape{static_cast<std::size_t>(state.range(0))}, 2);
  const auto phi = YoungFunction::power(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(a.values(), phi));
}
BENCHMARK(BM_LuxemburgPower)->RangeMultiplier(4)->Range(64, 16384);

static void BM_Analysis(benchmark::State& state) {
  const auto L = static_cast<std::size_t>(state.range(0));
  const auto sys = GaborSystem::signal(L, 4, 4, gaussian_window(L));
  const auto f = noise(GridShape{L}, 3);
  for (auto _ : state) benchmark::DoNotOptimize(sys.analysis(f));
}
BENCHMARK(BM_Analysis)->RangeMultiplier(2)->Range(16, 256);

static void BM_DualSolve(benchmark::State& state) {
  const auto L = static_cast<std::size_t>(state.range(0));
  const auto w = gaussian_window(L, 2);
  for (auto _ : state) {
    GaborSystem sys(L, Lattice{{2, 2}, {2, 2}}, w);
    benchmark::DoNotOptimize(sys.dual());
  }
}
BENCHMARK(BM_DualSolve)->RangeMultiplier(2)->Range(8, 32);

static void BM_GaborMatrix(benchmark::State& state) {
  const auto L = static_cast<std::size_t>(state.range(0));
  const OperatorFrame frame(L, 2, 2);
  const auto a = noise(symbol_shape(L), 4);
  for (auto _ : state) benchmark::DoNotOptimize(frame.gabor_matrix(a));
}
BENCHMARK(BM_GaborMatrix)->RangeMultiplier(2)->Range(8, 32);

static void BM_KernelFromSymbol(benchmark::State& state) {
  const auto L = static_cast<std::size_t>(state.range(0));
  const auto a = noise(symbol_shape(L), 5);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_from_symbol(a, Quantization::zero()));
}
BENCHMARK(BM_KernelFromSymbol)->RangeMultiplier(2)->Range(16, 256);
BENCHMARK_MAIN();
