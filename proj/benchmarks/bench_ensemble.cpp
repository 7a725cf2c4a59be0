#include <benchmark/benchmark.h>

#include "transduce/ensemble.hpp"

using namespace transduce;

namespace {

GaussianEnsembleSpec fig4(int nodes, QuadratureRule rule) {
  GaussianEnsembleSpec g;
  g.sigma13 = Rate(30e6);
  g.sigma12 = Rate(100e3);
  g.n_total = 1.47e6;
  g.base = CenterClass{Rate(2e6), Rate(40.0), Rate(1e6), Rate(1.0), Rate(0.0), Rate(0.0), Rate(4e6), 1.0};
  g.nodes13 = g.nodes12 = nodes;
  g.rule = rule;
  return g;
}

}  // namespace

static void BM_HermiteVoigt(benchmark::State& state) {
  const auto g = fig4(static_cast<int>(state.range(0)), QuadratureRule::hermite_voigt);
  for (auto _ : state) benchmark::DoNotOptimize(ensemble_susceptibilities(g, OperatingPoint{}));
}
BENCHMARK(BM_HermiteVoigt)->Arg(8)->Arg(32)->Arg(128);

static void BM_ProductRule(benchmark::State& state) {
  const auto g = fig4(static_cast<int>(state.range(0)), QuadratureRule::product);
  for (auto _ : state) benchmark::DoNotOptimize(ensemble_susceptibilities(g, OperatingPoint{}));
}
BENCHMARK(BM_ProductRule)->Arg(8)->Arg(32);
