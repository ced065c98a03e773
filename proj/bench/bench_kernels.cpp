#include <benchmark/benchmark.h>

#include "duality/grassmann.hpp"
#include "duality/ising.hpp"
#include "duality/kasteleyn.hpp"
#include "duality/spinnet.hpp"

using namespace duality;

namespace {

// Ising sweep over all 2^V spin configurations of the dodecahedron.
void BM_IsingSweep(benchmark::State& state) {
  auto g = generate("dodecahedron");
  std::vector<double> Y(g.num_edges(), 0.3);
  SweepOptions opt;
  opt.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(z_ising_bruteforce(g, Y, opt));
}
BENCHMARK(BM_IsingSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_IsingSweepExact(benchmark::State& state) {
  auto g = generate("cube");
  std::vector<Rational> Y(g.num_edges(), Rational(1, 3));
  SweepOptions opt;
  opt.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(z_ising_bruteforce(g, Y, opt));
}
BENCHMARK(BM_IsingSweepExact)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMicrosecond);

// Staged Grassmann products: real form on the cube, complex form on K4 (24 generators each).
void BM_GrassmannReal(benchmark::State& state) {
  auto g = generate("cube");
  auto o = make_kasteleyn(g);
  GrassmannOptions opt;
  opt.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(z_f(g, o, opt));
}
BENCHMARK(BM_GrassmannReal)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_GrassmannComplex(benchmark::State& state) {
  auto g = generate("k4");
  auto o = make_kasteleyn(g);
  GrassmannOptions opt;
  opt.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(z_f_complex(g, o, opt));
}
BENCHMARK(BM_GrassmannComplex)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

// Colouring sweep of the comparison check on K4.
void BM_ColoringSweep(benchmark::State& state) {
  auto g = generate("k4");
  auto o = make_kasteleyn(g);
  ComparisonOptions opt;
  opt.parallel = state.range(0) != 0;
  opt.check_only_if = false;
  for (auto _ : state) benchmark::DoNotOptimize(verify_comparison_theorem(g, o, 3, opt));
}
BENCHMARK(BM_ColoringSweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
