// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include "resolventlab/resolventlab.hpp"

using namespace rlab;

namespace {

Execution exec_of(const benchmark::State& st) { return st.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_self_map(benchmark::State& st) {
    const Generator g = catalog::halfplane_quadratic();
    for (auto _ : st) benchmark::DoNotOptimize(verify_self_map(g, 2.0, 400, 0, exec_of(st)));
}

void BM_generator_test(benchmark::State& st) {
    // G composed with the resolvent at t = 1, the expensive form of the disk test
    const Generator g = catalog::disk_g1();
    const ComplexFn h = [&](Complex z) { return g.value_fn()(solve_resolvent(g, 1.0, z).value); };
    for (auto _ : st) benchmark::DoNotOptimize(is_generator_disk(h, 0.0, 32, exec_of(st)));
}

void BM_decreasing(benchmark::State& st) {
    const HerglotzField f({{0.0, 1.0, catalog::disk_g1()}, {1.0, 2.0, catalog::disk_g2()}});
    const std::vector<double> times = {0.0, 0.5, 1.0, 1.05, 1.5, 2.0};
    const auto grid = disk_grid(40);
    for (auto _ : st) benchmark::DoNotOptimize(decreasing_check(f, times, grid, exec_of(st)));
}

void BM_semigroup_law(benchmark::State& st) {
    const Generator g = catalog::disk_parabolic();
    for (auto _ : st) benchmark::DoNotOptimize(semigroup_law_check(g, 0.3, 0.7, 200, 1e-10, 0, exec_of(st)));
}

void BM_stieltjes(benchmark::State& st) {
    const RealMeasure mu{semicircle()};
    const ComplexFn G = [&](Complex z) { return cauchy_transform(mu, z); };
    std::vector<double> xs(2000);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -3.0 + 6.0 * double(i) / double(xs.size() - 1);
    for (auto _ : st) benchmark::DoNotOptimize(stieltjes_invert(G, xs, exec_of(st)));
}

}  // namespace

BENCHMARK(BM_self_map)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_generator_test)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_decreasing)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_semigroup_law)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_stieltjes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
