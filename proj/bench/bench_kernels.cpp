#include <benchmark/benchmark.h>

#include "fracbern/one_free.hpp"
#include "fracbern/proofcheck.hpp"
#include "fracbern/two_free.hpp"

using namespace fracbern;

namespace {

Execution mode(const benchmark::State& s) { return s.range(0) ? Execution::parallel : Execution::serial; }

void BM_SeriesOperator(benchmark::State& state) {
    SeriesSpec spec;
    spec.grid_points = static_cast<int>(state.range(1));
    const NeumannSolution s = neumann_f(make_alpha_context(1.0), 0.3, spec);
    std::vector<double> out;
    for (auto _ : state) {
        apply_series_operator(s, s.node_f, out, mode(state));
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_SeriesOperator)->ArgsProduct({{0, 1}, {256, 1024}});

void BM_NeumannAlphaHalf(benchmark::State& state) {
    const AlphaContext c = make_alpha_context(0.5);
    for (auto _ : state) benchmark::DoNotOptimize(neumann_f(c, 0.4, {}, {}, mode(state)).node_f.data());
}
BENCHMARK(BM_NeumannAlphaHalf)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PsiCurve(benchmark::State& state) {
    const AlphaContext c = make_alpha_context(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(psi_curve(c, 32, {}, {}, mode(state)).data());
}
BENCHMARK(BM_PsiCurve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RateCurve(benchmark::State& state) {
    const AlphaContext c = make_alpha_context(0.5);
    for (auto _ : state) benchmark::DoNotOptimize(rate_R_curve(c, 256, mode(state)).data());
}
BENCHMARK(BM_RateCurve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_F1Scan(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(f1_infimum(400, 40, mode(state)).value);
}
BENCHMARK(BM_F1Scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
