#include "dunkel/droughts.hpp"
#include "dunkel/prl.hpp"
#include "dunkel/thresholds.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace dunkel;

namespace {

AvailabilitySeries wind_like(std::size_t n) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 0.25);
    std::vector<double> x(n);
    double z = 0.0;
    for (double& v : x) {
        z = 0.985 * z + noise(rng);
        v = 1.0 / (1.0 + std::exp(-(z - 1.0)));
    }
    return AvailabilitySeries(TimeSeries(std::move(x)), "wind", "DE");
}

ResidualLoadSeries residual_like(std::size_t n) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> noise(0.0, 10.0);
    std::vector<double> x(n);
    double level = 0.0;
    for (double& v : x) {
        level = 0.9 * level + noise(rng);
        v = level;
    }
    return ResidualLoadSeries(TimeSeries(std::move(x)), "rl");
}

template <class Detect>
void run(benchmark::State& state, Detect detect) {
    const auto a = wind_like(static_cast<std::size_t>(state.range(0)));
    const auto thr = resolve_threshold(ThresholdSpec::mean_fraction(0.5), a);
    for (auto _ : state) {
        benchmark::DoNotOptimize(detect(a, thr));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_cbt(benchmark::State& s) { run(s, [](auto& a, auto& t) { return detect_cbt(a, t); }); }
void BM_fmbt24(benchmark::State& s) { run(s, [](auto& a, auto& t) { return detect_fmbt(a, t, 24); }); }
void BM_spa(benchmark::State& s) { run(s, [](auto& a, auto& t) { return detect_spa_drought(a, t); }); }
void BM_vmbt_step24(benchmark::State& s) { run(s, [](auto& a, auto& t) { return detect_vmbt(a, t, {std::nullopt, 24}); }); }
void BM_vmbt_step1(benchmark::State& s) { run(s, [](auto& a, auto& t) { return detect_vmbt(a, t); }); }

void BM_spa_adj(benchmark::State& state) {
    const auto r = residual_like(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(detect_spa_prl(r, StorageEfficiency(0.5)));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_cbt)->Arg(8760)->Arg(52608);
BENCHMARK(BM_fmbt24)->Arg(8760)->Arg(52608);
BENCHMARK(BM_spa)->Arg(8760)->Arg(52608);
BENCHMARK(BM_spa_adj)->Arg(52608);
BENCHMARK(BM_vmbt_step24)->Arg(8760)->Arg(52608)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_vmbt_step1)->Arg(8760)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
