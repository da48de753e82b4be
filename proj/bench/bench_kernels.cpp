// Serial reference vs OpenMP kernels, plus the fast transform against the
// naive DFT. Run: ./bench/gpam_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "gpam/estimators.hpp"
#include "gpam/reference.hpp"

using namespace gpam;

namespace {

Field bench_field(int n, std::uint64_t seed) {
    GaussianStream rng(seed);
    Field f{TorusGrid(n)};
    for (auto& x : f.v) x = rng.next();
    return f;
}

void bm_axpy_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Field a = bench_field(n, 1), b = bench_field(n, 2);
    for (auto _ : state) {
        ref::field_axpy(a, 1e-6, b);
        benchmark::ClobberMemory();
    }
}

void bm_axpy_omp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Field a = bench_field(n, 1), b = bench_field(n, 2);
    for (auto _ : state) {
        field_axpy(a, 1e-6, b);
        benchmark::ClobberMemory();
    }
}

void bm_product_serial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Field a = bench_field(n, 3), b = bench_field(n, 4);
    for (auto _ : state) {
        ref::field_multiply_inplace(a, b);
        benchmark::ClobberMemory();
    }
}

void bm_product_omp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Field a = bench_field(n, 3), b = bench_field(n, 4);
    for (auto _ : state) {
        field_multiply_inplace(a, b);
        benchmark::ClobberMemory();
    }
}

void bm_fft(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Field f = bench_field(n, 5);
    for (auto _ : state) benchmark::DoNotOptimize(forward_transform(f));
}

void bm_naive_dft(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Field f = bench_field(n, 5);
    for (auto _ : state) benchmark::DoNotOptimize(ref::naive_forward_transform(f));
}

std::vector<double> mc_work(int, std::uint64_t seed) {
    const TorusGrid g(32);
    const SolveContext ctx = [&] {
        SolveContext c = make_context(g, 0.125, 32, MollifierSpec{0.25},
                                      builtin_nonlinearity("cos"), Field(g));
        c.snapshot_stride = c.steps;
        return c;
    }();
    const NoiseRealization xi = sample_white_noise(g, seed);
    const Trajectory t = solve_shifted(ctx, CMFunction(g), 0.3, xi);
    return {field_max_abs(t.terminal())};
}

void bm_mc_serial(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(ref::sample_table(static_cast<int>(state.range(0)), 1, mc_work, 9));
}

void bm_mc_omp(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sample_table(static_cast<int>(state.range(0)), 0, 1, mc_work, 9));
}

} // namespace

BENCHMARK(bm_axpy_serial)->Arg(128)->Arg(256);
BENCHMARK(bm_axpy_omp)->Arg(128)->Arg(256);
BENCHMARK(bm_product_serial)->Arg(128)->Arg(256);
BENCHMARK(bm_product_omp)->Arg(128)->Arg(256);
BENCHMARK(bm_fft)->Arg(16)->Arg(32);
BENCHMARK(bm_naive_dft)->Arg(16)->Arg(32);
BENCHMARK(bm_mc_serial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_mc_omp)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
