#include "vmg/smoother.hpp"

#include <stdexcept>

namespace vmg {

Vector relax(const Level& level, Vector v, const Vector& g,
             const SmootherConfig& config, WorkCounter* wc, int threads) {
    if (config.sweeps < 0) {
        throw std::invalid_argument("sweeps must be nonnegative");
    }
    const CsrMatrix& L = level.op;
    const double inv_lambda = 1.0 / level.spectral.lambda_max;

    Vector diag;
    if (config.kind == SmootherKind::jacobi) {
        diag = L.diagonal();
        for (double d : diag) {
            if (d == 0.0) {
                throw std::invalid_argument("singular diagonal");
            }
        }
    }

    for (int sweep = 0; sweep < config.sweeps; ++sweep) {
        Vector r = residual(L, v, g, threads);
        if (wc) wc->add(L);
        switch (config.kind) {
            case SmootherKind::richardson:
                for (std::size_t i = 0; i < v.size(); ++i) {
                    v[i] -= inv_lambda * r[i];
                }
                break;
            case SmootherKind::jacobi:
                for (std::size_t i = 0; i < v.size(); ++i) {
                    v[i] -= config.jacobi_step_s * r[i] / diag[i];
                }
                break;
            case SmootherKind::richardson_optimal_step: {
                Vector lr = spmv(L, r, threads);
                if (wc) wc->add(L);
                double denom = dot(lr, r);
                if (denom == 0.0) break;  // zero residual, nothing to do
                double s = dot(r, r) / denom;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    v[i] -= s * r[i];
                }
                break;
            }
        }
    }
    return v;
}

Vector error_propagation_apply(const Level& level, const Vector& e) {
    return relax(level, e, zeros(e.size()),
                 {SmootherKind::richardson, 1, 0.0});
}

}  // namespace vmg
