#include <benchmark/benchmark.h>

#include "amice/logsheaf.hpp"

using namespace amice;

namespace {

MeasureSeries sample_theta(std::uint32_t p, int M, int ns, int nt) {
    RingSpec ring = RingSpec::plain(p, M);
    DiracCombination d(ring, 2);
    d.add_int(1, 2, 3);
    d.add_int(p + 1, 1, -5);
    d.add_int(2 * p + 1, 4, 7);
    return amice_transform(d, ns, nt);
}

void BM_AmiceTransform(benchmark::State& state) {
    RingSpec ring = RingSpec::plain(3, 4);
    DiracCombination d(ring, 2);
    for (int t = 0; t < 6; ++t) d.add_int(2 * t + 1, t, t - 3);
    auto n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        MeasureSeries m = amice_transform(d, n, n);
        benchmark::DoNotOptimize(m.series.min_eff());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AmiceTransform)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_Psi(benchmark::State& state) {
    auto n = static_cast<int>(state.range(0));
    MeasureSeries theta = sample_theta(3, 4, n, 4);
    for (auto _ : state) {
        Series g = psi(theta.series);
        benchmark::DoNotOptimize(g.is_zero());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Psi)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_RestrictUnits(benchmark::State& state) {
    auto n = static_cast<int>(state.range(0));
    MeasureSeries theta = sample_theta(3, 4, n, 4);
    for (auto _ : state) {
        MeasureSeries r = restrict_units(theta);
        benchmark::DoNotOptimize(r.series.min_eff());
    }
}
BENCHMARK(BM_RestrictUnits)->RangeMultiplier(2)->Range(8, 64);

void BM_MomentGridClosed(benchmark::State& state) {
    auto level = static_cast<int>(state.range(0));
    MeasureSeries theta = sample_theta(3, 4, 16, level + 1);
    for (auto _ : state) {
        MomentGrid g = moment_grid_closed(theta, level, RestrictionMode::units);
        benchmark::DoNotOptimize(g.level());
    }
}
BENCHMARK(BM_MomentGridClosed)->DenseRange(2, 6, 2);

void BM_VerifyPolylog(benchmark::State& state) {
    auto level = static_cast<int>(state.range(0));
    MeasureSeries theta = sample_theta(3, 4, 16, level + 1);
    for (auto _ : state) {
        VerifyReport rep = verify_polylog(theta, level, RestrictionMode::units);
        benchmark::DoNotOptimize(rep.pass);
    }
}
BENCHMARK(BM_VerifyPolylog)->DenseRange(2, 6, 2);

} // namespace

BENCHMARK_MAIN();
