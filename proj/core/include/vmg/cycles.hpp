#pragma once

#include <utility>

#include "vmg/smoother.hpp"

namespace vmg {

enum class CycleKind { two_grid, v_cycle, w_cycle };
enum class CoarsestPolicy { direct_solve, relax_only };

struct CycleParams {
    int mu = 1;
    int nu = 1;
    CycleKind kind = CycleKind::v_cycle;
    int q = 1;                      // FMG cycles per level
    double epsilon = 1e-8;          // IMG residual tolerance
    int max_img_cycles = 100;
    CoarsestPolicy coarsest_policy = CoarsestPolicy::direct_solve;
    SmootherConfig smoother;        // kind and jacobi step; sweeps ignored
};

struct SolveReport {
    std::vector<double> residual_history;       // Euclidean norms per cycle
    std::vector<double> energy_error_history;   // filled when exact known
    std::vector<double> convergence_factors;    // successive ratios
    double work_units = 0.0;
    int cycles_executed = 0;
    bool converged = false;
};

/// Algorithm: mu sweeps, exact (dense) coarse-grid correction between the
/// two finest levels, nu sweeps.
Vector two_grid_cycle(const Hierarchy& hier, Vector v, const Vector& g,
                      const CycleParams& params, WorkCounter* wc = nullptr);

/// Recursive V-cycle from level_index. On the coarsest level either a
/// cached direct solve or mu+nu relaxation sweeps, per coarsest_policy.
Vector v_cycle(const Hierarchy& hier, int level_index, Vector v,
               const Vector& g, const CycleParams& params,
               WorkCounter* wc = nullptr);

/// As v_cycle but with two successive coarse-level applications, the second
/// warm-started from the first.
Vector w_cycle(const Hierarchy& hier, int level_index, Vector v,
               const Vector& g, const CycleParams& params,
               WorkCounter* wc = nullptr);

/// One cycle of params.kind applied to the finest level.
Vector apply_cycle(const Hierarchy& hier, Vector v, const Vector& g,
                   const CycleParams& params, WorkCounter* wc = nullptr);

/// Iterative multigrid solver: repeatedly forms the residual of L u = f,
/// runs one cycle on the correction equation from a zero guess, and
/// corrects, until ||L u - f|| <= epsilon or max_img_cycles.
std::pair<Vector, SolveReport> img_solve(const Hierarchy& hier, Vector u,
                                         const Vector& f,
                                         const CycleParams& params);

/// sources[0] = f, sources[l+1] = R_l sources[l].
std::vector<Vector> restricted_sources(const Hierarchy& hier, const Vector& f);

/// Full multigrid: zero guess on the coarsest level, q cycles per level on
/// the way up, each finer level warm-started by prolongating the coarser
/// result.
std::pair<Vector, SolveReport> fmg_solve(const Hierarchy& hier,
                                         const std::vector<Vector>& sources,
                                         const CycleParams& params);

}  // namespace vmg
