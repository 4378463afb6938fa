#include <benchmark/benchmark.h>

#include "kwayneg/canonical.hpp"
#include "kwayneg/convex_roof.hpp"
#include "kwayneg/negativity.hpp"
#include "kwayneg/random.hpp"

using namespace kwayneg;

static void BM_Jacobi(benchmark::State& state) {
    const int qubits = static_cast<int>(state.range(0));
    RandomStream rng(1);
    const DensityOperator rho = random_mixed(SubsystemLayout::qubits(qubits), 1 << qubits, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eigensystem(rho.matrix()));
    }
}
BENCHMARK(BM_Jacobi)->Arg(3)->Arg(4);

static void BM_NegativityReport(benchmark::State& state) {
    const int qubits = static_cast<int>(state.range(0));
    RandomStream rng(2);
    const DensityOperator rho = random_mixed(SubsystemLayout::qubits(qubits), 4, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(negativity_report(rho, 0));
    }
}
BENCHMARK(BM_NegativityReport)->Arg(3)->Arg(4);

static void BM_Canonicalize3(benchmark::State& state) {
    RandomStream rng(3);
    const PureState psi = haar_random_pure(SubsystemLayout::qubits(3), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(canonicalize3(psi));
    }
}
BENCHMARK(BM_Canonicalize3);

static void BM_Roof(benchmark::State& state) {
    RandomStream rng(4);
    const DensityOperator rho = random_mixed(SubsystemLayout::qubits(2), 2, rng);
    const RoofBudget budget{4, 4, static_cast<int>(state.range(0)), 5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(roof_negativity(rho, 0, RoofMeasure::global(), budget));
    }
}
BENCHMARK(BM_Roof)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
