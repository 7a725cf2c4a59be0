#include <benchmark/benchmark.h>

#include <vector>

#include "transduce/oracle.hpp"
#include "transduce/response.hpp"

using namespace transduce;

namespace {

CenterClass tcenter() {
  return CenterClass{Rate(2e6), Rate(40.0), Rate(1e6), Rate(1.0), Rate(0.0), Rate(0.0), Rate(4e6), 1e6};
}

System table1() {
  System s;
  s.ensemble = std::vector<CenterClass>{tcenter()};
  s.optical = CavityMode{Rate(2.26e14), Rate(2e9), Rate(0.0)};
  s.microwave = CavityMode{Rate(5e9), Rate(0.8e6), Rate(0.0)};
  return s;
}

}  // namespace

static void BM_Evaluate(benchmark::State& state) {
  const auto s = table1();
  const OperatingPoint p{Rate(1e4), Rate(1e8)};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(s, p));
}
BENCHMARK(BM_Evaluate);

static void BM_OracleSteadyState(benchmark::State& state) {
  std::vector<CenterClass> cs(static_cast<std::size_t>(state.range(0)), tcenter());
  for (std::size_t i = 0; i < cs.size(); ++i) {
    cs[i].delta13 = Rate(1e7 * (static_cast<double>(i) - 0.5 * cs.size()));
    cs[i].weight = 1e6 / cs.size();
  }
  const ModeLoss opt{Rate(2e9), Rate(2e9)}, mw{Rate(0.8e6), Rate(0.8e6)};
  for (auto _ : state) benchmark::DoNotOptimize(steady_state_efficiency(cs, opt, mw, OperatingPoint{}, DrivePort::microwave));
}
BENCHMARK(BM_OracleSteadyState)->Arg(1)->Arg(8)->Arg(32);
