#include <benchmark/benchmark.h>

#include "vmg/cycles.hpp"

using namespace vmg;

namespace {

void bm_spmv(benchmark::State& state) {
    GridSpec grid{static_cast<int>(state.range(0))};
    CsrMatrix A = assemble_poisson_5pt(grid);
    Vector x = figure1_initial_guess(grid, 42);
    for (auto _ : state) {
        Vector y = spmv(A, x);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * A.nnz());
}

void bm_relax_sweep(benchmark::State& state) {
    GridSpec grid{static_cast<int>(state.range(0))};
    Level level;
    level.grid = grid;
    level.op = assemble_poisson_5pt(grid);
    level.spectral = estimate_spectral_norm(level.op);
    Vector v = figure1_initial_guess(grid, 42);
    Vector g = zeros(v.size());
    for (auto _ : state) {
        v = relax(level, std::move(v), g, {SmootherKind::richardson, 1});
        benchmark::DoNotOptimize(v.data());
    }
}

void bm_v_cycle(benchmark::State& state) {
    GridSpec grid{static_cast<int>(state.range(0))};
    ModelProblem problem;
    problem.grid = grid;
    problem.matrix = assemble_poisson_5pt(grid);
    problem.source = zeros(grid.n_unknowns());
    Hierarchy h = build_hierarchy(problem, 2);
    Vector g = zeros(grid.n_unknowns());
    for (auto _ : state) {
        state.PauseTiming();
        Vector v = figure1_initial_guess(grid, 42);
        state.ResumeTiming();
        v = v_cycle(h, 0, std::move(v), g, {});
        benchmark::DoNotOptimize(v.data());
    }
}

void bm_build_hierarchy(benchmark::State& state) {
    ModelProblem problem =
        manufactured_poisson({static_cast<int>(state.range(0))});
    for (auto _ : state) {
        Hierarchy h = build_hierarchy(problem, 2);
        benchmark::DoNotOptimize(h.levels.data());
    }
}

BENCHMARK(bm_spmv)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bm_relax_sweep)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bm_v_cycle)->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(bm_build_hierarchy)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
