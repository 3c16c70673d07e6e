#include "vmg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace vmg {

CsrMatrix CsrMatrix::from_triplets(int n_rows, int n_cols,
                                   std::vector<Triplet> entries) {
    if (n_rows <= 0 || n_cols <= 0) {
        throw std::invalid_argument("shape: matrix dimensions must be positive");
    }
    for (const Triplet& t : entries) {
        if (t.row < 0 || t.row >= n_rows || t.col < 0 || t.col >= n_cols) {
            throw std::invalid_argument("shape: triplet index out of range");
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Triplet& a, const Triplet& b) {
                  return a.row != b.row ? a.row < b.row : a.col < b.col;
              });

    CsrMatrix m;
    m.n_rows_ = n_rows;
    m.n_cols_ = n_cols;
    m.row_offsets_.assign(n_rows + 1, 0);
    m.col_indices_.reserve(entries.size());
    m.values_.reserve(entries.size());

    std::size_t i = 0;
    for (int r = 0; r < n_rows; ++r) {
        while (i < entries.size() && entries[i].row == r) {
            int c = entries[i].col;
            double v = 0.0;
            while (i < entries.size() && entries[i].row == r &&
                   entries[i].col == c) {
                v += entries[i].value;  // duplicates are summed
                ++i;
            }
            if (v != 0.0) {
                m.col_indices_.push_back(c);
                m.values_.push_back(v);
            }
        }
        m.row_offsets_[r + 1] = static_cast<int>(m.values_.size());
    }
    return m;
}

CsrMatrix CsrMatrix::identity(int n) {
    std::vector<Triplet> t;
    t.reserve(n);
    for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return from_triplets(n, n, std::move(t));
}

std::span<const int> CsrMatrix::row_cols(int i) const {
    return {col_indices_.data() + row_offsets_[i],
            col_indices_.data() + row_offsets_[i + 1]};
}

std::span<const double> CsrMatrix::row_values(int i) const {
    return {values_.data() + row_offsets_[i],
            values_.data() + row_offsets_[i + 1]};
}

double CsrMatrix::at(int i, int j) const {
    auto cols = row_cols(i);
    auto it = std::lower_bound(cols.begin(), cols.end(), j);
    if (it == cols.end() || *it != j) return 0.0;
    return values_[row_offsets_[i] + (it - cols.begin())];
}

Vector CsrMatrix::diagonal() const {
    int n = std::min(n_rows_, n_cols_);
    Vector d(n, 0.0);
    for (int i = 0; i < n; ++i) d[i] = at(i, i);
    return d;
}

CsrMatrix CsrMatrix::transpose() const {
    std::vector<Triplet> t;
    t.reserve(values_.size());
    for (int i = 0; i < n_rows_; ++i) {
        for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            t.push_back({col_indices_[k], i, values_[k]});
        }
    }
    return from_triplets(n_cols_, n_rows_, std::move(t));
}

bool CsrMatrix::is_symmetric(double rel_tol) const {
    if (n_rows_ != n_cols_) return false;
    double scale = max_abs();
    for (int i = 0; i < n_rows_; ++i) {
        for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            double mirror = at(col_indices_[k], i);
            if (std::abs(values_[k] - mirror) > rel_tol * scale) return false;
        }
    }
    return true;
}

double CsrMatrix::gershgorin_bound() const {
    double bound = 0.0;
    for (int i = 0; i < n_rows_; ++i) {
        double row_sum = 0.0;
        for (double v : row_values(i)) row_sum += std::abs(v);
        bound = std::max(bound, row_sum);
    }
    return bound;
}

double CsrMatrix::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

namespace {

void spmv_rows(const CsrMatrix& A, const Vector& x, Vector& y, int begin,
               int end) {
    const auto& offsets = A.row_offsets();
    const auto& cols = A.col_indices();
    const auto& vals = A.values();
    for (int i = begin; i < end; ++i) {
        double acc = 0.0;
        for (int k = offsets[i]; k < offsets[i + 1]; ++k) {
            acc += vals[k] * x[cols[k]];
        }
        y[i] = acc;
    }
}

}  // namespace

Vector spmv(const CsrMatrix& A, const Vector& x, int threads) {
    if (static_cast<int>(x.size()) != A.cols()) {
        throw std::invalid_argument("shape: spmv with vector of length " +
                                    std::to_string(x.size()));
    }
    Vector y(A.rows());
    if (threads <= 1 || A.rows() < 4 * threads) {
        spmv_rows(A, x, y, 0, A.rows());
        return y;
    }
    std::vector<std::thread> pool;
    int chunk = (A.rows() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        int begin = t * chunk;
        int end = std::min(A.rows(), begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(spmv_rows, std::cref(A), std::cref(x), std::ref(y),
                          begin, end);
    }
    for (auto& th : pool) th.join();
    return y;
}

Vector residual(const CsrMatrix& A, const Vector& v, const Vector& g,
                int threads) {
    if (g.size() != static_cast<std::size_t>(A.rows())) {
        throw std::invalid_argument("shape: residual source length");
    }
    Vector r = spmv(A, v, threads);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= g[i];
    return r;
}

CsrMatrix multiply(const CsrMatrix& A, const CsrMatrix& B, double drop_rel) {
    if (A.cols() != B.rows()) {
        throw std::invalid_argument("shape: multiply with inner dims " +
                                    std::to_string(A.cols()) + " and " +
                                    std::to_string(B.rows()));
    }
    std::vector<Triplet> out;
    std::vector<double> acc(B.cols(), 0.0);
    std::vector<int> marked;
    for (int i = 0; i < A.rows(); ++i) {
        marked.clear();
        auto a_cols = A.row_cols(i);
        auto a_vals = A.row_values(i);
        for (std::size_t k = 0; k < a_cols.size(); ++k) {
            int j = a_cols[k];
            double av = a_vals[k];
            auto b_cols = B.row_cols(j);
            auto b_vals = B.row_values(j);
            for (std::size_t l = 0; l < b_cols.size(); ++l) {
                if (acc[b_cols[l]] == 0.0) marked.push_back(b_cols[l]);
                acc[b_cols[l]] += av * b_vals[l];
            }
        }
        double row_max = 0.0;
        for (int c : marked) row_max = std::max(row_max, std::abs(acc[c]));
        std::sort(marked.begin(), marked.end());
        for (int c : marked) {
            if (std::abs(acc[c]) > drop_rel * row_max) {
                out.push_back({i, c, acc[c]});
            }
            acc[c] = 0.0;
        }
    }
    return CsrMatrix::from_triplets(A.rows(), B.cols(), std::move(out));
}

CsrMatrix scaled(const CsrMatrix& A, double a) {
    std::vector<Triplet> t;
    t.reserve(A.nnz());
    for (int i = 0; i < A.rows(); ++i) {
        auto cols = A.row_cols(i);
        auto vals = A.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            t.push_back({i, cols[k], a * vals[k]});
        }
    }
    return CsrMatrix::from_triplets(A.rows(), A.cols(), std::move(t));
}

}  // namespace vmg
