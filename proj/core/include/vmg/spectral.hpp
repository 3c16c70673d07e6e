#pragma once

#include "vmg/sparse.hpp"

namespace vmg {

enum class SpectralMethod { power_iteration, gershgorin_bound };

struct SpectralEstimate {
    double lambda_max = 0.0;
    int iterations_used = 0;
    double residual_tol_achieved = 0.0;
    SpectralMethod method = SpectralMethod::power_iteration;
};

/// Largest-eigenvalue estimate for a symmetric matrix. Power iteration from
/// the normalized all-ones vector, stopping when successive Rayleigh
/// quotients agree to tol relatively. If max_iter is hit first, falls back
/// to the Gershgorin row-sum bound, which is >= the true lambda_max and so
/// keeps the scaled Richardson step convergent.
SpectralEstimate estimate_spectral_norm(const CsrMatrix& A,
                                        double tol = 1e-10,
                                        int max_iter = 5000);

double energy_inner(const CsrMatrix& A, const Vector& x, const Vector& y);
double energy_norm(const CsrMatrix& A, const Vector& x);

}  // namespace vmg
