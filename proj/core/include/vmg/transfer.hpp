#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vmg/dense_cholesky.hpp"
#include "vmg/problems.hpp"
#include "vmg/spectral.hpp"

namespace vmg {

/// One level of the grid hierarchy. The prolongation maps from the next
/// coarser level up to this one; the restriction maps down. Both are absent
/// on the coarsest level.
struct Level {
    GridSpec grid;
    CsrMatrix op;
    SpectralEstimate spectral;
    std::optional<CsrMatrix> prolongation_to_here;
    std::optional<CsrMatrix> restriction_from_here;
};

struct Hierarchy {
    std::vector<Level> levels;  // index 0 = finest
    double alpha = 1.0;
    std::optional<DenseCholesky> coarsest_factor;

    const Level& finest() const { return levels.front(); }
    const Level& coarsest() const { return levels.back(); }
    int n_levels() const { return static_cast<int>(levels.size()); }
};

/// Bilinear (9-point) interpolation from the coarse grid to a once-refined
/// fine grid. Boundary-truncated stencils drop out-of-domain weights
/// without renormalization.
CsrMatrix bilinear_prolongation(const GridSpec& coarse, const GridSpec& fine);

/// alpha * P^t * L * P in canonical CSR. Throws "galerkin asymmetry" if the
/// result fails the symmetry check (a broken P).
CsrMatrix galerkin_coarse_operator(const CsrMatrix& P, const CsrMatrix& L_fine,
                                   double alpha = 1.0);

/// Repeated factor-2 Galerkin coarsening down to coarsest_N, with cached
/// spectral estimates and a coarsest-level Cholesky factor (when it fits
/// under the direct-solve cap).
Hierarchy build_hierarchy(const ModelProblem& problem, int coarsest_N,
                          double alpha = 1.0,
                          int direct_solve_cap = kDefaultDirectSolveCap);

using CoarseSolver = std::function<Vector(const CsrMatrix&, const Vector&)>;

/// v - P * solve(L_coarse, R (L v - g)); with an exact coarse solver this
/// minimizes the energy functional over all coarse corrections.
Vector coarse_grid_correction(const Level& fine, const Level& coarse,
                              const Vector& v, const Vector& g,
                              const CoarseSolver& coarse_solver);

/// Per-level Matrix Market files plus a JSON manifest in dir.
void dump_hierarchy(const Hierarchy& hier, const std::string& dir);

}  // namespace vmg
