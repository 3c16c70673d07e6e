#include "vmg/dense_cholesky.hpp"

#include <cmath>
#include <stdexcept>

namespace vmg {

DenseCholesky::DenseCholesky(const CsrMatrix& A, int size_cap) {
    if (A.rows() != A.cols()) {
        throw std::invalid_argument("shape: direct solve of non-square matrix");
    }
    if (A.rows() > size_cap) {
        throw std::invalid_argument("too large for direct solve: n = " +
                                    std::to_string(A.rows()));
    }
    n_ = A.rows();
    factor_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        auto cols = A.row_cols(i);
        auto vals = A.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            factor_[static_cast<std::size_t>(i) * n_ + cols[k]] = vals[k];
        }
    }

    // In-place lower Cholesky.
    for (int j = 0; j < n_; ++j) {
        double* row_j = factor_.data() + static_cast<std::size_t>(j) * n_;
        double d = row_j[j];
        for (int k = 0; k < j; ++k) d -= row_j[k] * row_j[k];
        if (d <= 0.0) {
            throw std::invalid_argument("not positive definite");
        }
        row_j[j] = std::sqrt(d);
        for (int i = j + 1; i < n_; ++i) {
            double* row_i = factor_.data() + static_cast<std::size_t>(i) * n_;
            double s = row_i[j];
            for (int k = 0; k < j; ++k) s -= row_i[k] * row_j[k];
            row_i[j] = s / row_j[j];
        }
    }
}

Vector DenseCholesky::solve(const Vector& b) const {
    if (static_cast<int>(b.size()) != n_) {
        throw std::invalid_argument("shape: direct solve rhs length");
    }
    Vector x = b;
    for (int i = 0; i < n_; ++i) {
        const double* row = factor_.data() + static_cast<std::size_t>(i) * n_;
        double s = x[i];
        for (int k = 0; k < i; ++k) s -= row[k] * x[k];
        x[i] = s / row[i];
    }
    for (int i = n_ - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n_; ++k) {
            s -= factor_[static_cast<std::size_t>(k) * n_ + i] * x[k];
        }
        x[i] = s / factor_[static_cast<std::size_t>(i) * n_ + i];
    }
    return x;
}

Vector dense_solve(const CsrMatrix& A, const Vector& b, int size_cap) {
    return DenseCholesky(A, size_cap).solve(b);
}

}  // namespace vmg
