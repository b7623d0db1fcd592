// Serial reference against the OpenMP version of each parallel kernel.
// Thread count follows BALK1_THREADS, then the OpenMP default.

#include "balk1/balanced.hpp"
#include "balk1/loops.hpp"
#include "balk1/opmodel.hpp"
#include "balk1/relindex.hpp"

#include <benchmark/benchmark.h>

using namespace balk1;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

const loops::SymbolPair& circle_pair() {
    static const auto sp = loops::circle_symbol_pair(1, -1, 2048);
    return sp;
}

void BM_fourier(benchmark::State& st) {
    const auto& loop = circle_pair().plus.sigma1;
    for (auto _ : st) benchmark::DoNotOptimize(opmodel::fourier(loop, exec_of(st)));
}

void BM_laurent_block(benchmark::State& st) {
    const auto fs = opmodel::fourier(circle_pair().plus.sigma1);
    const int modes = static_cast<int>(st.range(1));
    for (auto _ : st) benchmark::DoNotOptimize(opmodel::laurent_block(fs, modes, opmodel::Half::Plus, exec_of(st)));
}

void BM_loop_sample(benchmark::State& st) {
    const auto f = [](double t) {
        return balanced::homotopy_eval(balanced::PathKind::Adjoint, numkern::random_unitary(3, 1),
                                       numkern::random_unitary(3, 1), t)
            .A;
    };
    for (auto _ : st) benchmark::DoNotOptimize(loops::MatrixLoop::sample(f, 512, exec_of(st)));
}

void BM_validate_path(benchmark::State& st) {
    const auto p = balanced::random_balanced_pair(4, 3);
    for (auto _ : st)
        benchmark::DoNotOptimize(
            balanced::validate_path(balanced::PathKind::IotaKappa, p.a, p.b, 1001, 1e-9, exec_of(st)));
}

void BM_sweep(benchmark::State& st) {
    relindex::PipelineOptions opts;
    opts.modes = 64;
    opts.check_doubling = false;
    opts.all_formulas = false;
    for (auto _ : st) benchmark::DoNotOptimize(relindex::sweep(-1, 0, -1, 0, 2048, opts, exec_of(st)));
}

}  // namespace

BENCHMARK(BM_fourier)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_laurent_block)->ArgNames({"parallel", "modes"})->ArgsProduct({{0, 1}, {128, 256}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_loop_sample)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_validate_path)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kSecond)->Iterations(1);

BENCHMARK_MAIN();
