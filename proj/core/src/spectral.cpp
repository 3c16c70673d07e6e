#include "vmg/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace vmg {

SpectralEstimate estimate_spectral_norm(const CsrMatrix& A, double tol,
                                        int max_iter) {
    if (A.rows() != A.cols()) {
        throw std::invalid_argument("shape: spectral norm of non-square matrix");
    }
    if (A.nnz() == 0 || A.max_abs() == 0.0) {
        throw std::invalid_argument("singular norm: zero matrix");
    }

    int n = A.rows();
    Vector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double rayleigh = 0.0;
    SpectralEstimate est;
    for (int it = 0; it < max_iter; ++it) {
        Vector av = spmv(A, v);
        double next = dot(av, v);  // v is unit length
        double nrm = norm2(av);
        if (nrm == 0.0) break;  // v in the kernel; fall back below
        for (int i = 0; i < n; ++i) v[i] = av[i] / nrm;
        double diff = std::abs(next - rayleigh);
        rayleigh = next;
        if (it > 0 && diff <= tol * std::abs(next)) {
            est.lambda_max = next;
            est.iterations_used = it + 1;
            est.residual_tol_achieved = diff / std::abs(next);
            est.method = SpectralMethod::power_iteration;
            return est;
        }
    }

    est.lambda_max = A.gershgorin_bound();
    est.iterations_used = max_iter;
    est.residual_tol_achieved = tol;
    est.method = SpectralMethod::gershgorin_bound;
    if (est.lambda_max <= 0.0) {
        throw std::invalid_argument("singular norm: zero matrix");
    }
    return est;
}

double energy_inner(const CsrMatrix& A, const Vector& x, const Vector& y) {
    if (!A.is_symmetric()) {
        throw std::invalid_argument("requires symmetric: energy inner product");
    }
    return dot(spmv(A, x), y);
}

double energy_norm(const CsrMatrix& A, const Vector& x) {
    return std::sqrt(dot(spmv(A, x), x));
}

}  // namespace vmg
