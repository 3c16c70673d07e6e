#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vmg/vector.hpp"

namespace vmg {

struct Triplet {
    int row;
    int col;
    double value;
};

/// Compressed sparse row matrix in canonical form: within each row the
/// column indices are strictly increasing and no explicit zeros are stored.
/// Duplicate entries passed to from_triplets are summed.
class CsrMatrix {
public:
    CsrMatrix() = default;

    static CsrMatrix from_triplets(int n_rows, int n_cols,
                                   std::vector<Triplet> entries);
    static CsrMatrix identity(int n);

    int rows() const { return n_rows_; }
    int cols() const { return n_cols_; }
    int nnz() const { return static_cast<int>(values_.size()); }

    const std::vector<int>& row_offsets() const { return row_offsets_; }
    const std::vector<int>& col_indices() const { return col_indices_; }
    const std::vector<double>& values() const { return values_; }

    std::span<const int> row_cols(int i) const;
    std::span<const double> row_values(int i) const;

    /// Entry (i, j), zero if not stored.
    double at(int i, int j) const;

    Vector diagonal() const;
    CsrMatrix transpose() const;

    /// Stored (i,j,v) must have a (j,i) partner equal within rel_tol.
    bool is_symmetric(double rel_tol = 1e-12) const;

    /// max_i sum_j |A_ij|; an upper bound on the spectral norm for
    /// symmetric matrices.
    double gershgorin_bound() const;

    double max_abs() const;

private:
    int n_rows_ = 0;
    int n_cols_ = 0;
    std::vector<int> row_offsets_{0};
    std::vector<int> col_indices_;
    std::vector<double> values_;
};

/// y = A x, each row accumulated left-to-right. threads > 1 partitions the
/// rows but keeps the per-row accumulation order, so the result is
/// identical to the sequential one.
Vector spmv(const CsrMatrix& A, const Vector& x, int threads = 1);

/// residual r = A v - g
Vector residual(const CsrMatrix& A, const Vector& v, const Vector& g,
                int threads = 1);

/// C = A B. Entries with |value| < drop_rel * (row max) are dropped.
CsrMatrix multiply(const CsrMatrix& A, const CsrMatrix& B,
                   double drop_rel = 0.0);

/// Scale every entry by a.
CsrMatrix scaled(const CsrMatrix& A, double a);

}  // namespace vmg
