#include "vmg/transfer.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "vmg/matrix_market.hpp"

namespace vmg {

CsrMatrix bilinear_prolongation(const GridSpec& coarse, const GridSpec& fine) {
    if (fine.N != 2 * coarse.N) {
        throw std::invalid_argument("non-nested grids: fine N " +
                                    std::to_string(fine.N) + " vs coarse N " +
                                    std::to_string(coarse.N));
    }
    int mf = fine.interior_points_per_side();
    int mc = coarse.interior_points_per_side();
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(4) * mf * mf);

    // Fine interior node (fx, fy) sits at coarse coordinates
    // ((fx+1)/2 - 1, (fy+1)/2 - 1); odd fine indices are coincident with
    // coarse nodes, even ones sit on coarse edges or cell centers.
    // Out-of-domain coarse neighbors carry homogeneous Dirichlet zeros and
    // are dropped without renormalization.
    auto add = [&](int row, int cx, int cy, double w) {
        if (cx < 0 || cx >= mc || cy < 0 || cy >= mc) return;
        t.push_back({row, coarse.index(cx, cy), w});
    };

    for (int fy = 0; fy < mf; ++fy) {
        for (int fx = 0; fx < mf; ++fx) {
            int row = fine.index(fx, fy);
            bool x_on_coarse = (fx % 2) == 1;
            bool y_on_coarse = (fy % 2) == 1;
            int cx = (fx - 1) / 2;  // nearest coarse index at or left/below
            int cy = (fy - 1) / 2;
            if (x_on_coarse && y_on_coarse) {
                add(row, cx, cy, 1.0);
            } else if (x_on_coarse) {
                add(row, cx, (fy / 2) - 1, 0.5);
                add(row, cx, fy / 2, 0.5);
            } else if (y_on_coarse) {
                add(row, (fx / 2) - 1, cy, 0.5);
                add(row, fx / 2, cy, 0.5);
            } else {
                add(row, (fx / 2) - 1, (fy / 2) - 1, 0.25);
                add(row, fx / 2, (fy / 2) - 1, 0.25);
                add(row, (fx / 2) - 1, fy / 2, 0.25);
                add(row, fx / 2, fy / 2, 0.25);
            }
        }
    }
    return CsrMatrix::from_triplets(mf * mf, mc * mc, std::move(t));
}

CsrMatrix galerkin_coarse_operator(const CsrMatrix& P, const CsrMatrix& L_fine,
                                   double alpha) {
    if (alpha <= 0.0) {
        throw std::invalid_argument("restriction scaling alpha must be positive");
    }
    // Two-pass triple product; tiny fill-in noise below 1e-14 of the row
    // max is dropped.
    CsrMatrix lp = multiply(L_fine, P);
    CsrMatrix coarse = multiply(P.transpose(), lp, 1e-14);
    if (alpha != 1.0) coarse = scaled(coarse, alpha);
    if (!coarse.is_symmetric(1e-12)) {
        throw std::runtime_error("galerkin asymmetry");
    }
    return coarse;
}

Hierarchy build_hierarchy(const ModelProblem& problem, int coarsest_N,
                          double alpha, int direct_solve_cap) {
    int N = problem.grid.N;
    if (coarsest_N < 2 || N < coarsest_N) {
        throw std::invalid_argument("non-nested: bad coarsest N");
    }
    int ratio = N / coarsest_N;
    if (coarsest_N * ratio != N || (ratio & (ratio - 1)) != 0) {
        throw std::invalid_argument("non-nested: N must be coarsest N times a power of two");
    }

    Hierarchy hier;
    hier.alpha = alpha;

    Level finest;
    finest.grid = problem.grid;
    finest.op = problem.matrix;
    finest.spectral = estimate_spectral_norm(finest.op);
    hier.levels.push_back(std::move(finest));

    while (hier.levels.back().grid.N > coarsest_N) {
        Level& fine = hier.levels.back();
        GridSpec coarse_grid{fine.grid.N / 2};
        CsrMatrix P = bilinear_prolongation(coarse_grid, fine.grid);
        Level coarse;
        coarse.grid = coarse_grid;
        coarse.op = galerkin_coarse_operator(P, fine.op, alpha);
        coarse.spectral = estimate_spectral_norm(coarse.op);
        fine.restriction_from_here = scaled(P.transpose(), alpha);
        fine.prolongation_to_here = std::move(P);
        hier.levels.push_back(std::move(coarse));
    }

    if (hier.coarsest().op.rows() <= direct_solve_cap) {
        hier.coarsest_factor.emplace(hier.coarsest().op, direct_solve_cap);
    }
    return hier;
}

Vector coarse_grid_correction(const Level& fine, const Level& coarse,
                              const Vector& v, const Vector& g,
                              const CoarseSolver& coarse_solver) {
    if (!fine.prolongation_to_here || !fine.restriction_from_here) {
        throw std::invalid_argument("fine level has no transfer operators");
    }
    Vector r = residual(fine.op, v, g);
    Vector rc = spmv(*fine.restriction_from_here, r);
    Vector w = coarse_solver(coarse.op, rc);
    Vector corrected = v;
    Vector pw = spmv(*fine.prolongation_to_here, w);
    axpy(-1.0, pw, corrected);
    return corrected;
}

void dump_hierarchy(const Hierarchy& hier, const std::string& dir) {
    std::filesystem::create_directories(dir);
    nlohmann::json manifest;
    manifest["schema"] = 1;
    manifest["alpha"] = hier.alpha;
    manifest["level_count"] = hier.n_levels();
    manifest["levels"] = nlohmann::json::array();
    for (int l = 0; l < hier.n_levels(); ++l) {
        const Level& level = hier.levels[l];
        std::string op_file = "level_" + std::to_string(l) + "_operator.mtx";
        write_matrix_market(level.op, dir + "/" + op_file, true);
        nlohmann::json entry;
        entry["index"] = l;
        entry["N"] = level.grid.N;
        entry["n_unknowns"] = level.grid.n_unknowns();
        entry["lambda_max"] = level.spectral.lambda_max;
        entry["operator"] = op_file;
        if (level.prolongation_to_here) {
            std::string p_file = "level_" + std::to_string(l) + "_prolongation.mtx";
            write_matrix_market(*level.prolongation_to_here, dir + "/" + p_file);
            entry["prolongation"] = p_file;
        }
        manifest["levels"].push_back(entry);
    }
    std::ofstream out(dir + "/manifest.json");
    out << manifest.dump(2) << "\n";
}

}  // namespace vmg
