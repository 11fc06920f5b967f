#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "zmc/analysis.hpp"
#include "zmc/gallery.hpp"
#include "zmc/mesh.hpp"

using namespace zmc;

namespace {

const Surface& scherk(int n) {
  static std::vector<Surface> cache = [] {
    std::vector<Surface> v;
    for (int k = 2; k <= 8; ++k) v.emplace_back(*gallery_lookup("scherk:" + std::to_string(k)).data);
    return v;
  }();
  return cache[n - 2];
}

void BM_Chebyshev(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  double u = 1.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cheb_T(n, u) + cheb_U(n, u));
    u += 1e-9;
  }
}
BENCHMARK(BM_Chebyshev)->Arg(4)->Arg(16);

void BM_EvalClosedForm(benchmark::State& state) {
  const auto& s = scherk(static_cast<int>(state.range(0)));
  auto p = s.domain().at_clearance(0.7, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(s.eval(p));
}
BENCHMARK(BM_EvalClosedForm)->DenseRange(2, 8, 3);

void BM_EvalQuadrature(benchmark::State& state) {
  const auto& s = scherk(static_cast<int>(state.range(0)));
  auto p = s.domain().at_clearance(0.7, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(s.eval_by_quadrature(p));
}
BENCHMARK(BM_EvalQuadrature)->Arg(2)->Arg(4);

void BM_Jacobians(benchmark::State& state) {
  const auto& s = scherk(3);
  auto p = s.domain().at_clearance(1.1, 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(jacobians_from_oneforms(s, p));
}
BENCHMARK(BM_Jacobians);

void BM_GraphInverterBuild(benchmark::State& state) {
  const auto& s = scherk(3);
  for (auto _ : state) {
    GraphInverter inv(s);
    benchmark::DoNotOptimize(&inv);
  }
}
BENCHMARK(BM_GraphInverterBuild)->Unit(benchmark::kMillisecond);

void BM_GraphInvert(benchmark::State& state) {
  const auto& s = scherk(3);
  GraphInverter inv(s);
  double x = -1.7, y = 0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inv.invert(x, y));
    x = x > 1.7 ? -1.7 : x + 0.013;
  }
}
BENCHMARK(BM_GraphInvert);

void BM_SampleGrid(benchmark::State& state) {
  const auto& s = scherk(3);
  GridOptions opt;
  opt.res_theta = opt.res_u = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_grid(s, opt));
}
BENCHMARK(BM_SampleGrid)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_InjectivityScan(benchmark::State& state) {
  const auto& s = scherk(3);
  for (auto _ : state) benchmark::DoNotOptimize(injectivity_scan(s, {.resolution = static_cast<int>(state.range(0))}));
}
BENCHMARK(BM_InjectivityScan)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  auto d = *gallery_lookup("self-intersecting-n3").data;
  for (auto _ : state) benchmark::DoNotOptimize(classify(d));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
