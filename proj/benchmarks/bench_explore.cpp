#include <benchmark/benchmark.h>

#include <vector>

#include "transduce/explore.hpp"

using namespace transduce;

namespace {

System table1() {
  System s;
  s.ensemble =
      std::vector<CenterClass>{{Rate(2e6), Rate(40.0), Rate(1e6), Rate(1.0), Rate(0.0), Rate(0.0), Rate(4e6), 1e6}};
  s.optical = CavityMode{Rate(2.26e14), Rate(2e9), Rate(0.0)};
  s.microwave = CavityMode{Rate(5e9), Rate(0.8e6), Rate(0.0)};
  return s;
}

}  // namespace

static void BM_Sweep201(benchmark::State& state) {
  const auto s = table1();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep(s, Axis{-2e5, 2e5, 201}, Axis{-5e9, 5e9, 201}, threads));
}
BENCHMARK(BM_Sweep201)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_Contours(benchmark::State& state) {
  const auto s = table1();
  const ContourWindow w{-4e6, 4e6, -2e11, 2e11, 2e3, 2e7, 401, 401};
  for (auto _ : state) benchmark::DoNotOptimize(trace_contours(s, w));
}
BENCHMARK(BM_Contours)->Unit(benchmark::kMillisecond);

static void BM_Optimize(benchmark::State& state) {
  const auto s = table1();
  const OptimizeWindow w{-2e5, 2e5, -5e9, 5e9, 41, 41};
  for (auto _ : state) benchmark::DoNotOptimize(optimize_operating_point(s, w));
}
BENCHMARK(BM_Optimize)->Unit(benchmark::kMillisecond);
