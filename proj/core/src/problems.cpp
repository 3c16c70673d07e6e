#include "vmg/problems.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace vmg {

namespace {

void validate(const GridSpec& grid) {
    if (grid.N < 2) {
        throw std::invalid_argument("grid N must be at least 2");
    }
}

}  // namespace

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

CsrMatrix assemble_poisson_5pt(const GridSpec& grid) {
    validate(grid);
    int m = grid.interior_points_per_side();
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(5) * m * m);
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            int row = grid.index(ix, iy);
            t.push_back({row, row, 4.0});
            if (ix > 0) t.push_back({row, grid.index(ix - 1, iy), -1.0});
            if (ix < m - 1) t.push_back({row, grid.index(ix + 1, iy), -1.0});
            if (iy > 0) t.push_back({row, grid.index(ix, iy - 1), -1.0});
            if (iy < m - 1) t.push_back({row, grid.index(ix, iy + 1), -1.0});
        }
    }
    return CsrMatrix::from_triplets(m * m, m * m, std::move(t));
}

Vector figure1_initial_guess(const GridSpec& grid, std::uint64_t rng_seed) {
    validate(grid);
    int m = grid.interior_points_per_side();
    SplitMix64 rng(rng_seed);
    Vector v(grid.n_unknowns());
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            double x = grid.x(ix);
            double y = grid.y(iy);
            double smooth = std::sin(1.4 * x + 0.1) * std::sin(1.4 * y + 0.1);
            double osc = 1.0 + std::sin(17.0 * x - 2.0) * std::sin(9.0 * y);
            v[grid.index(ix, iy)] =
                smooth * osc + 0.7 * rng.next_uniform();
        }
    }
    // Divide (not multiply by a reciprocal) so the max entry lands on 1
    // exactly.
    double alpha = norm_inf(v);
    if (alpha > 0.0) {
        for (double& e : v) e /= alpha;
    }
    return v;
}

ModelProblem manufactured_poisson(const GridSpec& grid) {
    validate(grid);
    ModelProblem p;
    p.grid = grid;
    p.matrix = assemble_poisson_5pt(grid);
    p.exact_u = [](double x, double y) {
        return std::sin(std::numbers::pi * x) * std::sin(std::numbers::pi * y);
    };
    double h = grid.mesh_size_h();
    double load = h * h * 2.0 * std::numbers::pi * std::numbers::pi;
    int m = grid.interior_points_per_side();
    p.source.resize(grid.n_unknowns());
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            p.source[grid.index(ix, iy)] =
                load * (*p.exact_u)(grid.x(ix), grid.y(iy));
        }
    }
    return p;
}

Vector sample_exact(const ModelProblem& problem) {
    if (!problem.exact_u) {
        throw std::invalid_argument("problem has no exact solution");
    }
    int m = problem.grid.interior_points_per_side();
    Vector u(problem.grid.n_unknowns());
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            u[problem.grid.index(ix, iy)] =
                (*problem.exact_u)(problem.grid.x(ix), problem.grid.y(iy));
        }
    }
    return u;
}

void write_grid_csv(const GridSpec& grid, const Vector& v,
                    const std::string& path) {
    if (v.size() != static_cast<std::size_t>(grid.n_unknowns())) {
        throw std::invalid_argument("shape: grid snapshot length");
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    int m = grid.interior_points_per_side();
    char buf[64];
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            std::snprintf(buf, sizeof(buf), "%.17g", v[grid.index(ix, iy)]);
            out << buf << (ix + 1 < m ? "," : "\n");
        }
    }
}

}  // namespace vmg
