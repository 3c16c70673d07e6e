#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "test_util.hpp"
#include "vmg/cycles.hpp"
#include "vmg/diagnostics.hpp"

using namespace vmg;
using namespace vmg_test;

namespace {

Hierarchy two_level(int N) {
    return build_hierarchy(manufactured_poisson({N}), N / 2);
}

}  // namespace

TEST_CASE("two-grid cycle keeps the zero fixed point") {
    Hierarchy h = two_level(8);
    Vector v = two_grid_cycle(h, zeros(h.finest().op.rows()),
                              zeros(h.finest().op.rows()), {});
    CHECK(norm2(v) == 0.0);
}

TEST_CASE("two-grid with no sweeps is a pure optimal correction") {
    Hierarchy h = two_level(16);
    SplitMix64 rng(31);
    Vector v0 = random_vector(h.finest().op.rows(), rng);
    Vector g = random_vector(h.finest().op.rows(), rng);
    CycleParams params;
    params.mu = params.nu = 0;
    Vector v = two_grid_cycle(h, v0, g, params);
    Vector coarse_resid =
        spmv(h.levels[0].prolongation_to_here->transpose(),
             residual(h.levels[0].op, v, g));
    CHECK(norm2(coarse_resid) <= 1e-10 * norm2(g));
}

TEST_CASE("two-grid reduces the error on the figure-1 guess") {
    Hierarchy h = two_level(16);
    Vector v0 = figure1_initial_guess(h.finest().grid, 42);
    Vector g = zeros(v0.size());
    Vector v = two_grid_cycle(h, v0, g, {});
    CHECK(norm2(v) < norm2(v0));
}

TEST_CASE("two-grid requires two levels") {
    Hierarchy h = build_hierarchy(manufactured_poisson({8}), 8);
    CHECK_THROWS_WITH_AS(
        two_grid_cycle(h, zeros(h.finest().op.rows()),
                       zeros(h.finest().op.rows()), {}),
        doctest::Contains("needs two levels"), std::invalid_argument);
}

TEST_CASE("v-cycle on two levels with direct solve equals two-grid") {
    Hierarchy h = two_level(16);
    SplitMix64 rng(32);
    Vector v0 = random_vector(h.finest().op.rows(), rng);
    Vector g = random_vector(h.finest().op.rows(), rng);
    CycleParams params;
    Vector tg = two_grid_cycle(h, v0, g, params);
    Vector mv = v_cycle(h, 0, v0, g, params);
    for (std::size_t i = 0; i < tg.size(); ++i) {
        CHECK(std::abs(tg[i] - mv[i]) <= 1e-12);
    }
}

TEST_CASE("v-cycle keeps exact solutions fixed") {
    ModelProblem problem = manufactured_poisson({16});
    Hierarchy h = build_hierarchy(problem, 2);
    Vector x = dense_solve(problem.matrix, problem.source);
    Vector out = v_cycle(h, 0, x, problem.source, {});
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(std::abs(out[i] - x[i]) <= 1e-12 * (1.0 + std::abs(x[i])));
    }
}

TEST_CASE("v-cycle factor stabilizes below 0.8 on N=64") {
    ModelProblem problem = manufactured_poisson({64});
    Hierarchy h = build_hierarchy(problem, 2);
    Vector v = figure1_initial_guess(problem.grid, 42);
    Vector g = zeros(v.size());
    std::vector<double> history = {norm2(v)};
    for (int cycle = 0; cycle < 10; ++cycle) {
        v = v_cycle(h, 0, v, g, {});
        history.push_back(norm2(v));
    }
    CHECK(asymptotic_convergence_factor(history) < 0.8);
}

TEST_CASE("w-cycle second coarse visit after an exact solve is a no-op") {
    Hierarchy h = two_level(16);
    SplitMix64 rng(33);
    Vector v0 = random_vector(h.finest().op.rows(), rng);
    Vector g = random_vector(h.finest().op.rows(), rng);
    CycleParams params;
    Vector tg = two_grid_cycle(h, v0, g, params);
    Vector mw = w_cycle(h, 0, v0, g, params);
    for (std::size_t i = 0; i < tg.size(); ++i) {
        CHECK(std::abs(tg[i] - mw[i]) <= 1e-12);
    }
}

TEST_CASE("w-cycle is at least as strong as the v-cycle") {
    ModelProblem problem = manufactured_poisson({64});
    Hierarchy h = build_hierarchy(problem, 2);
    Vector v0 = figure1_initial_guess(problem.grid, 42);
    Vector g = zeros(v0.size());

    auto factor = [&](CycleKind kind) {
        CycleParams params;
        params.kind = kind;
        Vector v = v0;
        std::vector<double> history = {norm2(v)};
        for (int cycle = 0; cycle < 10; ++cycle) {
            v = apply_cycle(h, std::move(v), g, params);
            history.push_back(norm2(v));
        }
        return asymptotic_convergence_factor(history);
    };
    CHECK(factor(CycleKind::w_cycle) <= factor(CycleKind::v_cycle) + 0.05);
}

TEST_CASE("w-cycle costs more work units than v-cycle on 3+ levels") {
    ModelProblem problem = manufactured_poisson({32});
    Hierarchy h = build_hierarchy(problem, 2);
    Vector v0 = figure1_initial_guess(problem.grid, 42);
    Vector g = zeros(v0.size());

    WorkCounter wv, ww;
    (void)v_cycle(h, 0, v0, g, {}, &wv);
    (void)w_cycle(h, 0, v0, g, {}, &ww);
    CHECK(ww.nnz_applied > wv.nnz_applied);
}

TEST_CASE("v-cycle work units match the sweep accounting band") {
    ModelProblem problem = manufactured_poisson({64});
    Hierarchy h = build_hierarchy(problem, 2);
    Vector v0 = figure1_initial_guess(problem.grid, 42);
    Vector g = zeros(v0.size());
    CycleParams params;  // mu = nu = 1

    WorkCounter wc;
    (void)v_cycle(h, 0, v0, g, params, &wc);
    double nnz0 = h.finest().op.nnz();
    double level_sum = 0.0;
    for (const Level& level : h.levels) level_sum += level.op.nnz() / nnz0;
    double predicted = (params.mu + params.nu + 1) * level_sum;
    double measured = wc.work_units(h.finest().op);
    CHECK(measured >= 0.9 * predicted);
    CHECK(measured <= 1.1 * predicted);
}

TEST_CASE("img returns immediately when already converged") {
    ModelProblem problem = manufactured_poisson({8});
    Hierarchy h = build_hierarchy(problem, 2);
    Vector x = dense_solve(problem.matrix, problem.source);
    CycleParams params;
    params.epsilon = 1e-6 * norm2(problem.source);
    auto [u, report] = img_solve(h, x, problem.source, params);
    CHECK(report.cycles_executed == 0);
    CHECK(report.converged);
    CHECK(u == x);
}

TEST_CASE("img drives the figure-1 guess to tolerance") {
    GridSpec grid{32};
    ModelProblem problem;
    problem.grid = grid;
    problem.matrix = assemble_poisson_5pt(grid);
    problem.source = zeros(grid.n_unknowns());
    Hierarchy h = build_hierarchy(problem, 2);

    Vector u0 = figure1_initial_guess(grid, 42);
    CycleParams params;
    params.epsilon = 1e-8 * norm2(spmv(problem.matrix, u0));
    auto [u, report] = img_solve(h, u0, problem.source, params);
    CHECK(report.converged);
    CHECK(norm2(residual(problem.matrix, u, problem.source)) <=
          params.epsilon);
    CHECK(norm2(u) <= 1e-7 * norm2(u0));
}

TEST_CASE("img flags non-convergence instead of throwing") {
    ModelProblem problem = manufactured_poisson({16});
    Hierarchy h = build_hierarchy(problem, 2);
    CycleParams params;
    params.epsilon = 1e-300;  // unreachable
    params.max_img_cycles = 3;
    auto [u, report] =
        img_solve(h, zeros(problem.source.size()), problem.source, params);
    CHECK_FALSE(report.converged);
    CHECK(report.cycles_executed == 3);
}

TEST_CASE("img cycle counts follow the measured-rho prediction") {
    // Tolerance target scaled by h^2: refining the mesh adds roughly
    // k / |log2 rho| cycles per factor-2 refinement.
    std::vector<int> counts;
    std::vector<double> rhos;
    for (int N : {16, 32, 64}) {
        GridSpec grid{N};
        ModelProblem problem;
        problem.grid = grid;
        problem.matrix = assemble_poisson_5pt(grid);
        problem.source = zeros(grid.n_unknowns());
        Hierarchy h = build_hierarchy(problem, 2);

        Vector u0 = figure1_initial_guess(grid, 42);
        double h2 = grid.mesh_size_h() * grid.mesh_size_h();
        CycleParams params;
        params.epsilon = h2 * norm2(spmv(problem.matrix, u0));
        params.max_img_cycles = 200;
        auto [u, report] = img_solve(h, u0, problem.source, params);
        REQUIRE(report.converged);
        counts.push_back(report.cycles_executed);
        if (report.residual_history.size() >= 5) {
            rhos.push_back(
                asymptotic_convergence_factor(report.residual_history));
        }
    }
    for (std::size_t i = 1; i < counts.size(); ++i) {
        CHECK(counts[i] >= counts[i - 1]);
    }
    REQUIRE_FALSE(rhos.empty());
    int predicted_step = cycles_needed(rhos.back(), 2.0);
    for (std::size_t i = 1; i < counts.size(); ++i) {
        CHECK(counts[i] - counts[i - 1] <= predicted_step + 2);
    }
}

TEST_CASE("fmg on a single level runs q cycles from zero") {
    ModelProblem problem = manufactured_poisson({8});
    Hierarchy h = build_hierarchy(problem, 8);
    CycleParams params;
    params.q = 2;
    auto [u, report] = fmg_solve(h, {problem.source}, params);
    // coarsest policy is direct solve, so the result is the discrete
    // solution
    Vector x = dense_solve(problem.matrix, problem.source);
    for (std::size_t i = 0; i < u.size(); ++i) {
        CHECK(u[i] == doctest::Approx(x[i]).epsilon(1e-10));
    }
    CHECK(report.cycles_executed == 2);
}

TEST_CASE("fmg rejects incomplete sources") {
    ModelProblem problem = manufactured_poisson({16});
    Hierarchy h = build_hierarchy(problem, 4);
    CHECK_THROWS_WITH_AS(fmg_solve(h, {problem.source}, {}),
                         doctest::Contains("incomplete sources"),
                         std::invalid_argument);
}

TEST_CASE("fmg energy error decays at first order and improves with q") {
    // The coarse-stage result is the energy projection onto the refinement
    // range, whose distance from the discrete solution is O(h): the
    // residual interpolation kinks carry O(h) energy. Each extra cycle per
    // level shrinks that gap by a roughly constant factor.
    auto solver_energy = [](int N, int q) {
        ModelProblem problem = manufactured_poisson({N});
        Hierarchy h = build_hierarchy(problem, 2);
        CycleParams params;
        params.q = q;
        auto [u, report] =
            fmg_solve(h, restricted_sources(h, problem.source), params);
        Vector err = u;
        axpy(-1.0, dense_solve(problem.matrix, problem.source), err);
        return energy_norm(problem.matrix, err);
    };

    double e16 = solver_energy(16, 1);
    double e32 = solver_energy(32, 1);
    CHECK(e16 / e32 > 1.7);
    CHECK(e16 / e32 < 2.4);

    CHECK(solver_energy(32, 2) < 0.5 * e32);

    // three cycles per level close the gap to the discretization error
    ModelProblem problem = manufactured_poisson({32});
    Vector disc_err = dense_solve(problem.matrix, problem.source);
    axpy(-1.0, sample_exact(problem), disc_err);
    CHECK(solver_energy(32, 3) <=
          2.0 * energy_norm(problem.matrix, disc_err));
}

TEST_CASE("fmg total work scales linearly with problem size") {
    std::vector<double> wu_per_unknown;
    for (int N : {32, 64, 128}) {
        ModelProblem problem = manufactured_poisson({N});
        Hierarchy h = build_hierarchy(problem, 2);
        auto sources = restricted_sources(h, problem.source);
        auto [u, report] = fmg_solve(h, sources, {});
        // work_units is normalized by the finest nnz; convert to raw
        // operations per unknown
        wu_per_unknown.push_back(report.work_units * h.finest().op.nnz() /
                                 problem.grid.n_unknowns());
    }
    double lo = *std::min_element(wu_per_unknown.begin(), wu_per_unknown.end());
    double hi = *std::max_element(wu_per_unknown.begin(), wu_per_unknown.end());
    CHECK((hi - lo) / hi <= 0.15);
}

TEST_CASE("relax-only coarsest policy still converges") {
    ModelProblem problem = manufactured_poisson({16});
    Hierarchy h = build_hierarchy(problem, 2);
    CycleParams params;
    params.coarsest_policy = CoarsestPolicy::relax_only;
    params.epsilon = 1e-8 * norm2(problem.source);
    params.max_img_cycles = 200;
    auto [u, report] =
        img_solve(h, zeros(problem.source.size()), problem.source, params);
    CHECK(report.converged);
}

TEST_CASE("reports are deterministic") {
    ModelProblem problem = manufactured_poisson({16});
    Hierarchy h = build_hierarchy(problem, 2);
    CycleParams params;
    params.epsilon = 1e-8 * norm2(problem.source);
    auto [u1, r1] =
        img_solve(h, zeros(problem.source.size()), problem.source, params);
    auto [u2, r2] =
        img_solve(h, zeros(problem.source.size()), problem.source, params);
    CHECK(u1 == u2);
    CHECK(r1.residual_history == r2.residual_history);
    CHECK(r1.work_units == r2.work_units);
}
