// Serial all-pairs reference kernels against the pruned OpenMP kernels.
//
//   ./build/bench/bench_kernels --benchmark_filter=Rhs
//
// Arguments are (side length, eps_x); eps_c is fixed at 57.

#include <benchmark/benchmark.h>

#include "agentseg/adjoint.hpp"
#include "agentseg/dynamics.hpp"
#include "agentseg/reference.hpp"
#include "agentseg/synthetic.hpp"

namespace {

using namespace agentseg;

ControlPair control_for(const benchmark::State& state) {
    return {static_cast<double>(state.range(1)), 57.0};
}

void BM_RhsReference(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const ImageGrid img = make_two_plateau(side, side);
    const ControlPair eps = control_for(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::rhs(img.field(), eps, KernelKind::standard_wendland));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(img.size()));
}

void BM_RhsParallel(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const ImageGrid img = make_two_plateau(side, side);
    const ControlPair eps = control_for(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rhs(img.field(), eps, KernelKind::standard_wendland));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(img.size()));
}

void BM_JacobianReference(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const ImageGrid img = make_two_plateau(side, side);
    const ImageGrid lam = make_uniform_random(side, side, 7);
    const ControlPair eps = control_for(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::jacobian_vector_product(
            img.field(), eps, lam.field(), KernelKind::standard_wendland));
        benchmark::DoNotOptimize(reference::df_deps(img.field(), eps, KernelKind::standard_wendland));
    }
}

void BM_AdjointStepParallel(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const ImageGrid img = make_two_plateau(side, side);
    const ImageGrid lam = make_uniform_random(side, side, 7);
    const ControlPair eps = control_for(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            adjoint_step(img.field(), eps, lam.field(), KernelKind::standard_wendland));
    }
}

void BM_ForwardHorizon(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    const ImageGrid img = make_two_plateau(side, side);
    const auto ctrl = ControlTrajectory::constant(0.25, 500, control_for(state));
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_forward(img, ctrl));
    }
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int side : {16, 32, 64}) {
        for (int eps_x : {2, 57, 1100}) b->Args({side, eps_x});
    }
}

} // namespace

BENCHMARK(BM_RhsReference)->Apply(sizes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RhsParallel)->Apply(sizes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_JacobianReference)->Apply(sizes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AdjointStepParallel)->Apply(sizes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ForwardHorizon)->Args({32, 2})->Args({32, 57})->Args({32, 1100})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
