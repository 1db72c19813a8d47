#include "gamp/amplitude.hpp"
#include "gamp/dynamics.hpp"
#include "gamp/spectral.hpp"

#include <benchmark/benchmark.h>

namespace {

const gamp::ParameterPoint kPoint{3.0, 2.0, 1.0};

gamp::ParameterLoop ellipse(double T) { return gamp::make_ellipse(2.0, 0.5, 1.0, 0.5, T); }

void BM_InnerEta(benchmark::State& state) {
    const auto psi = gamp::snapshot_state(kPoint, int(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamp::inner_eta(psi, psi, kPoint));
    }
}
BENCHMARK(BM_InnerEta)->Arg(0)->Arg(3)->Arg(6);

void BM_GramMatrix(benchmark::State& state) {
    std::vector<int> levels;
    for (int n = 0; n < state.range(0); ++n) levels.push_back(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamp::gram_matrix(kPoint, levels));
    }
}
BENCHMARK(BM_GramMatrix)->Arg(4)->Arg(8);

void BM_GammaClosedForm(benchmark::State& state) {
    const auto loop = ellipse(100.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamp::gamma_closed_form(loop, 0));
    }
}
BENCHMARK(BM_GammaClosedForm);

void BM_GammaConnection(benchmark::State& state) {
    const auto loop = ellipse(100.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamp::gamma_connection(loop, 0, int(state.range(0))));
    }
}
BENCHMARK(BM_GammaConnection)->Arg(64)->Arg(512);

void BM_Evolve(benchmark::State& state) {
    const auto loop = ellipse(double(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamp::evolve(loop, 0));
    }
}
BENCHMARK(BM_Evolve)->Arg(25)->Arg(100);

} // namespace

BENCHMARK_MAIN();
