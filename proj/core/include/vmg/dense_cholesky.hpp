#pragma once

#include "vmg/sparse.hpp"

namespace vmg {

inline constexpr int kDefaultDirectSolveCap = 4096;

/// Dense Cholesky factorization of an expanded sparse SPD matrix, kept
/// around so repeated coarsest-level solves only pay the factorization once.
class DenseCholesky {
public:
    explicit DenseCholesky(const CsrMatrix& A,
                           int size_cap = kDefaultDirectSolveCap);

    Vector solve(const Vector& b) const;
    int size() const { return n_; }

private:
    int n_ = 0;
    std::vector<double> factor_;  // lower triangle, row-major n x n
};

/// One-shot direct solve; throws "too large for direct solve" past the cap
/// and "not positive definite" on a nonpositive pivot.
Vector dense_solve(const CsrMatrix& A, const Vector& b,
                   int size_cap = kDefaultDirectSolveCap);

}  // namespace vmg
