#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "seqrac/monte_carlo.hpp"
#include "seqrac/schedule.hpp"
#include "seqrac/sequential.hpp"
#include "seqrac/small_angle.hpp"

using namespace seqrac;

namespace {

std::vector<SequentialChannelStep> square_steps(std::vector<double> lambdas) {
    std::vector<SequentialChannelStep> steps;
    for (double l : lambdas) {
        steps.emplace_back(SharpObservable::x(), SharpObservable::z(), l);
    }
    return steps;
}

void BM_LambdaSequence(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const WideReal omega = find_omega(n, 1.0, 1e-4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_sequence({omega, 1.0, 1e-4, n}));
    }
}
BENCHMARK(BM_LambdaSequence)->Arg(4)->Arg(10)->Arg(16);

void BM_FindOmega(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_omega(n, 1.0, 1e-4));
    }
}
BENCHMARK(BM_FindOmega)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Propagate(benchmark::State& state) {
    const auto prep = square_preparations(0.3, 1.0);
    const auto steps = square_steps(std::vector<double>(state.range(0), 0.4));
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(prep, steps));
    }
}
BENCHMARK(BM_Propagate)->Arg(1)->Arg(8);

void BM_SmallAnglePoly(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(small_angle_poly(k));
    }
}
BENCHMARK(BM_SmallAnglePoly)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

// One block of shots on a single thread.
void BM_MonteCarloBlock(benchmark::State& state) {
    SimulationConfig c;
    c.prep = square_preparations(0.3, 1.0);
    c.steps = square_steps({0.5, 0.8});
    c.shots = kShotsPerBlock;
    c.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run(c, 1));
    }
    state.SetItemsProcessed(state.iterations() * c.shots);
}
BENCHMARK(BM_MonteCarloBlock)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
