#include "vmg/cycles.hpp"

#include <cmath>
#include <stdexcept>

namespace vmg {

namespace {

SmootherConfig with_sweeps(const CycleParams& params, int sweeps) {
    SmootherConfig c = params.smoother;
    c.sweeps = sweeps;
    return c;
}

Vector solve_coarsest(const Hierarchy& hier, Vector v, const Vector& g,
                      const CycleParams& params, WorkCounter* wc) {
    const Level& level = hier.coarsest();
    if (params.coarsest_policy == CoarsestPolicy::direct_solve) {
        if (!hier.coarsest_factor) {
            throw std::runtime_error(
                "too large for direct solve: coarsest level");
        }
        if (wc) wc->add(level.op);
        return hier.coarsest_factor->solve(g);
    }
    // Algorithm layout gives the coarsest grid mu pre- plus nu post-sweeps.
    return relax(level, std::move(v), g,
                 with_sweeps(params, params.mu + params.nu), wc);
}

Vector cycle_recursive(const Hierarchy& hier, int level_index, Vector v,
                       const Vector& g, const CycleParams& params,
                       int coarse_visits, WorkCounter* wc) {
    const Level& level = hier.levels[level_index];
    bool coarsest = level_index + 1 == hier.n_levels();
    if (coarsest) {
        return solve_coarsest(hier, std::move(v), g, params, wc);
    }

    v = relax(level, std::move(v), g, with_sweeps(params, params.mu), wc);

    Vector r = residual(level.op, v, g);
    if (wc) wc->add(level.op);
    Vector g_coarse = spmv(*level.restriction_from_here, r);
    Vector v_coarse = zeros(g_coarse.size());
    for (int visit = 0; visit < coarse_visits; ++visit) {
        v_coarse = cycle_recursive(hier, level_index + 1, std::move(v_coarse),
                                   g_coarse, params, coarse_visits, wc);
    }
    Vector correction = spmv(*level.prolongation_to_here, v_coarse);
    axpy(-1.0, correction, v);

    return relax(level, std::move(v), g, with_sweeps(params, params.nu), wc);
}

}  // namespace

Vector two_grid_cycle(const Hierarchy& hier, Vector v, const Vector& g,
                      const CycleParams& params, WorkCounter* wc) {
    if (hier.n_levels() < 2) {
        throw std::invalid_argument("needs two levels");
    }
    const Level& fine = hier.levels[0];
    const Level& coarse = hier.levels[1];

    v = relax(fine, std::move(v), g, with_sweeps(params, params.mu), wc);

    Vector r = residual(fine.op, v, g);
    if (wc) wc->add(fine.op);
    Vector g_coarse = spmv(*fine.restriction_from_here, r);
    Vector v_coarse = dense_solve(coarse.op, g_coarse);
    if (wc) wc->add(coarse.op);
    Vector correction = spmv(*fine.prolongation_to_here, v_coarse);
    axpy(-1.0, correction, v);

    return relax(fine, std::move(v), g, with_sweeps(params, params.nu), wc);
}

Vector v_cycle(const Hierarchy& hier, int level_index, Vector v,
               const Vector& g, const CycleParams& params, WorkCounter* wc) {
    return cycle_recursive(hier, level_index, std::move(v), g, params, 1, wc);
}

Vector w_cycle(const Hierarchy& hier, int level_index, Vector v,
               const Vector& g, const CycleParams& params, WorkCounter* wc) {
    return cycle_recursive(hier, level_index, std::move(v), g, params, 2, wc);
}

Vector apply_cycle(const Hierarchy& hier, Vector v, const Vector& g,
                   const CycleParams& params, WorkCounter* wc) {
    switch (params.kind) {
        case CycleKind::two_grid:
            return two_grid_cycle(hier, std::move(v), g, params, wc);
        case CycleKind::v_cycle:
            return v_cycle(hier, 0, std::move(v), g, params, wc);
        case CycleKind::w_cycle:
            return w_cycle(hier, 0, std::move(v), g, params, wc);
    }
    throw std::logic_error("unknown cycle kind");
}

std::pair<Vector, SolveReport> img_solve(const Hierarchy& hier, Vector u,
                                         const Vector& f,
                                         const CycleParams& params) {
    if (params.epsilon <= 0.0) {
        throw std::invalid_argument("epsilon must be positive");
    }
    SolveReport report;
    WorkCounter wc;
    const CsrMatrix& L = hier.finest().op;

    for (int cycle = 0; cycle <= params.max_img_cycles; ++cycle) {
        Vector g = residual(L, u, f);
        wc.add(L);
        double rn = norm2(g);
        report.residual_history.push_back(rn);
        if (rn <= params.epsilon) {
            report.converged = true;
            break;
        }
        if (cycle == params.max_img_cycles) break;  // flagged, not thrown

        Vector v = apply_cycle(hier, zeros(g.size()), g, params, &wc);
        axpy(-1.0, v, u);
        ++report.cycles_executed;
    }

    for (std::size_t i = 1; i < report.residual_history.size(); ++i) {
        if (report.residual_history[i - 1] > 0.0) {
            report.convergence_factors.push_back(
                report.residual_history[i] / report.residual_history[i - 1]);
        }
    }
    report.work_units = wc.work_units(L);
    return {std::move(u), std::move(report)};
}

std::vector<Vector> restricted_sources(const Hierarchy& hier,
                                       const Vector& f) {
    std::vector<Vector> sources;
    sources.push_back(f);
    for (int l = 0; l + 1 < hier.n_levels(); ++l) {
        sources.push_back(
            spmv(*hier.levels[l].restriction_from_here, sources.back()));
    }
    return sources;
}

namespace {

Vector fmg_recursive(const Hierarchy& hier, int level_index,
                     const std::vector<Vector>& sources,
                     const CycleParams& params, WorkCounter* wc) {
    const Level& level = hier.levels[level_index];
    Vector u;
    if (level_index + 1 < hier.n_levels()) {
        Vector u_coarse =
            fmg_recursive(hier, level_index + 1, sources, params, wc);
        u = spmv(*level.prolongation_to_here, u_coarse);
    } else {
        u = zeros(level.op.rows());
    }

    // q cycles of the configured kind, rooted at this level.
    int coarse_visits = params.kind == CycleKind::w_cycle ? 2 : 1;
    for (int i = 0; i < params.q; ++i) {
        u = cycle_recursive(hier, level_index, std::move(u),
                            sources[level_index], params, coarse_visits, wc);
    }
    return u;
}

}  // namespace

std::pair<Vector, SolveReport> fmg_solve(const Hierarchy& hier,
                                         const std::vector<Vector>& sources,
                                         const CycleParams& params) {
    if (static_cast<int>(sources.size()) != hier.n_levels()) {
        throw std::invalid_argument("incomplete sources");
    }
    for (int l = 0; l < hier.n_levels(); ++l) {
        if (sources[l].size() !=
            static_cast<std::size_t>(hier.levels[l].op.rows())) {
            throw std::invalid_argument("incomplete sources");
        }
    }
    if (params.q < 1) throw std::invalid_argument("q must be at least 1");

    SolveReport report;
    WorkCounter wc;
    Vector u = fmg_recursive(hier, 0, sources, params, &wc);

    const CsrMatrix& L = hier.finest().op;
    report.residual_history.push_back(norm2(residual(L, u, sources[0])));
    report.cycles_executed = params.q * hier.n_levels();
    report.work_units = wc.work_units(L);
    report.converged = true;
    return {std::move(u), std::move(report)};
}

}  // namespace vmg
