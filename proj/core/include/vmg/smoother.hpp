#pragma once

#include "vmg/transfer.hpp"

namespace vmg {

enum class SmootherKind { richardson, jacobi, richardson_optimal_step };

struct SmootherConfig {
    SmootherKind kind = SmootherKind::richardson;
    int sweeps = 1;
    double jacobi_step_s = 2.0 / 3.0;  // used only for jacobi
};

/// Tracks operator applications in nonzeros; one work unit is a single
/// finest-level operator application.
struct WorkCounter {
    double nnz_applied = 0.0;

    void add(const CsrMatrix& A) { nnz_applied += A.nnz(); }
    double work_units(const CsrMatrix& finest) const {
        return nnz_applied / finest.nnz();
    }
};

/// Applies config.sweeps relaxation sweeps to L v = g.
///   richardson:              v <- v - (1/lambda_max) (L v - g)
///   jacobi:                  v <- v - s D^{-1} (L v - g)
///   richardson_optimal_step: v <- v - s_h (L v - g), s_h = <r,r>/<Lr,r>
/// lambda_max is always the level's cached spectral estimate.
Vector relax(const Level& level, Vector v, const Vector& g,
             const SmootherConfig& config, WorkCounter* wc = nullptr,
             int threads = 1);

/// e - (1/lambda_max) L e; identical to one Richardson sweep with zero
/// source.
Vector error_propagation_apply(const Level& level, const Vector& e);

}  // namespace vmg
