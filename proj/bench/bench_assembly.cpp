#include <cmath>

#include <benchmark/benchmark.h>
#include <omp.h>

#include "tumorbim/assembly.hpp"
#include "tumorbim/field_solver.hpp"

using namespace tumorbim;

namespace {

kernels::Boundary tumor(std::size_t n) {
  return kernels::Boundary(curve::equal_arclength_reparametrize(
      curve::polar(n, [](double t) { return 2.0 + 0.1 * std::cos(2 * t) + 0.05 * std::sin(5 * t); })));
}

void BM_HelmholtzSelfSerial(benchmark::State& st) {
  const auto b = tumor(st.range(0));
  const auto rule = kernels::kress_weights(static_cast<int>(st.range(0) / 2));
  for (auto _ : st) benchmark::DoNotOptimize(assembly::reference::helmholtz_self(b, 1.0, rule));
  st.SetComplexityN(st.range(0));
}

void BM_HelmholtzSelfParallel(benchmark::State& st) {
  const auto b = tumor(st.range(0));
  const auto rule = kernels::kress_weights(static_cast<int>(st.range(0) / 2));
  for (auto _ : st) benchmark::DoNotOptimize(assembly::helmholtz_self(b, 1.0, rule));
  st.counters["threads"] = omp_get_max_threads();
  st.SetComplexityN(st.range(0));
}

void BM_CrossSerial(benchmark::State& st) {
  const auto b = tumor(st.range(0));
  const kernels::Boundary far(curve::circle(st.range(0), 13.0));
  for (auto _ : st) benchmark::DoNotOptimize(assembly::reference::helmholtz_cross(far, b, 0.1));
}

void BM_CrossParallel(benchmark::State& st) {
  const auto b = tumor(st.range(0));
  const kernels::Boundary far(curve::circle(st.range(0), 13.0));
  for (auto _ : st) benchmark::DoNotOptimize(assembly::helmholtz_cross(far, b, 0.1));
  st.counters["threads"] = omp_get_max_threads();
}

void BM_LaplaceSerial(benchmark::State& st) {
  const auto b = tumor(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(assembly::reference::laplace_double(b));
}

void BM_LaplaceParallel(benchmark::State& st) {
  const auto b = tumor(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(assembly::laplace_double(b));
  st.counters["threads"] = omp_get_max_threads();
}

// whole field solve per time step, for scale
void BM_FieldSolve(benchmark::State& st) {
  ModelParams p;
  p.lambda = 0.01;
  p.chi = 5;
  p.P = 0.5;
  p.Ginv = 0.001;
  FieldSolver fs(curve::circle(st.range(0), 13.0), p);
  const auto b = tumor(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(fs.solve(b));
}

}  // namespace

BENCHMARK(BM_HelmholtzSelfSerial)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HelmholtzSelfParallel)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossSerial)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossParallel)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LaplaceSerial)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LaplaceParallel)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldSolve)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
