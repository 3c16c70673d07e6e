#pragma once

#include <cmath>
#include <numbers>

#include "vmg/problems.hpp"
#include "vmg/transfer.hpp"

namespace vmg_test {

/// tridiag(-1, 2, -1) with n interior points
inline vmg::CsrMatrix poisson_1d(int n) {
    std::vector<vmg::Triplet> t;
    for (int i = 0; i < n; ++i) {
        t.push_back({i, i, 2.0});
        if (i > 0) t.push_back({i, i - 1, -1.0});
        if (i < n - 1) t.push_back({i, i + 1, -1.0});
    }
    return vmg::CsrMatrix::from_triplets(n, n, std::move(t));
}

inline double poisson_1d_lambda_max(int n) {
    return 2.0 + 2.0 * std::cos(std::numbers::pi / (n + 1));
}

/// Discrete eigenvector sin(p pi x) sin(q pi y) of the 5-point operator.
inline vmg::Vector poisson_2d_mode(const vmg::GridSpec& grid, int p, int q) {
    int m = grid.interior_points_per_side();
    vmg::Vector w(grid.n_unknowns());
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            w[grid.index(ix, iy)] =
                std::sin(p * std::numbers::pi * grid.x(ix)) *
                std::sin(q * std::numbers::pi * grid.y(iy));
        }
    }
    return w;
}

inline double poisson_2d_eigenvalue(const vmg::GridSpec& grid, int p, int q) {
    double h = grid.mesh_size_h();
    return 4.0 - 2.0 * std::cos(p * std::numbers::pi * h) -
           2.0 * std::cos(q * std::numbers::pi * h);
}

inline vmg::Vector random_vector(int n, vmg::SplitMix64& rng) {
    vmg::Vector v(n);
    for (double& x : v) x = 2.0 * rng.next_uniform() - 1.0;
    return v;
}

/// Diagonally dominant random symmetric matrix (SPD by construction).
inline vmg::CsrMatrix random_spd(int n, vmg::SplitMix64& rng) {
    std::vector<vmg::Triplet> t;
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (int j = i + 1; j < n; ++j) {
            double v = rng.next_uniform() - 0.5;
            t.push_back({i, j, v});
            t.push_back({j, i, v});
            row_sum += std::abs(v);
        }
        t.push_back({i, i, 2.0 * row_sum + n + 1.0 + rng.next_uniform()});
    }
    // off-diagonal magnitudes are bounded by each row's share of the
    // diagonal only approximately; bump diagonals to be safe
    for (auto& tr : t) {
        if (tr.row == tr.col) tr.value += 2.0 * n;
    }
    return vmg::CsrMatrix::from_triplets(n, n, std::move(t));
}

inline vmg::Level make_level(const vmg::GridSpec& grid) {
    vmg::Level level;
    level.grid = grid;
    level.op = vmg::assemble_poisson_5pt(grid);
    level.spectral = vmg::estimate_spectral_norm(level.op);
    return level;
}

inline vmg::Level make_level_1d(int n) {
    vmg::Level level;
    level.op = poisson_1d(n);
    level.spectral = vmg::estimate_spectral_norm(level.op);
    return level;
}

}  // namespace vmg_test
