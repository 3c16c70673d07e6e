#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "vmg/sparse.hpp"

namespace vmg {

/// Uniform grid on the unit square with mesh size h = 1/N and (N-1)^2
/// interior unknowns, ordered lexicographically (row-major by y, then x).
struct GridSpec {
    int N = 0;

    double mesh_size_h() const { return 1.0 / N; }
    int interior_points_per_side() const { return N - 1; }
    int n_unknowns() const { return (N - 1) * (N - 1); }

    int index(int ix, int iy) const { return iy * (N - 1) + ix; }
    double x(int ix) const { return (ix + 1) * mesh_size_h(); }
    double y(int iy) const { return (iy + 1) * mesh_size_h(); }
};

struct ModelProblem {
    GridSpec grid;
    CsrMatrix matrix;
    Vector source;
    std::optional<std::function<double(double, double)>> exact_u;
};

/// 5-point Poisson stiffness matrix: diagonal 4, off-diagonal -1 at grid
/// neighbors; out-of-domain neighbors simply dropped (homogeneous
/// Dirichlet). Unscaled entries; the h^2 factor lives in the load vector.
CsrMatrix assemble_poisson_5pt(const GridSpec& grid);

/// Composite initial guess: two geometrically smooth factors, one
/// oscillatory factor, plus seeded uniform noise, normalized so the
/// maximum absolute value is exactly 1.
Vector figure1_initial_guess(const GridSpec& grid, std::uint64_t rng_seed);

/// Poisson problem with exact_u = sin(pi x) sin(pi y) and the matching
/// h^2-scaled load vector.
ModelProblem manufactured_poisson(const GridSpec& grid);

/// Samples exact_u at the interior nodes.
Vector sample_exact(const ModelProblem& problem);

/// Interior grid dumped as CSV, (N-1) rows x (N-1) columns, row = constant y.
void write_grid_csv(const GridSpec& grid, const Vector& v,
                    const std::string& path);

/// splitmix64 stream mapped to uniform [0,1).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double next_uniform();  // in [0, 1)

private:
    std::uint64_t state_;
};

}  // namespace vmg
