#include "vmg/matrix_market.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vmg {

CsrMatrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty file " + path);
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix" ||
        format != "coordinate" || field != "real") {
        throw std::runtime_error("unsupported MatrixMarket header in " + path);
    }
    bool symmetric = symmetry == "symmetric";
    if (!symmetric && symmetry != "general") {
        throw std::runtime_error("unsupported symmetry '" + symmetry + "'");
    }

    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream sizes(line);
    int rows = 0, cols = 0;
    long nnz = 0;
    if (!(sizes >> rows >> cols >> nnz)) {
        throw std::runtime_error("bad size line in " + path);
    }

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(nnz));
    for (long k = 0; k < nnz; ++k) {
        int i = 0, j = 0;
        double v = 0.0;
        if (!(in >> i >> j >> v)) {
            throw std::runtime_error("truncated entries in " + path);
        }
        entries.push_back({i - 1, j - 1, v});
        if (symmetric && i != j) entries.push_back({j - 1, i - 1, v});
    }
    return CsrMatrix::from_triplets(rows, cols, std::move(entries));
}

void write_matrix_market(const CsrMatrix& A, const std::string& path,
                         bool as_symmetric) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "%%MatrixMarket matrix coordinate real "
        << (as_symmetric ? "symmetric" : "general") << "\n";

    long count = 0;
    for (int i = 0; i < A.rows(); ++i) {
        for (int c : A.row_cols(i)) {
            if (!as_symmetric || c <= i) ++count;
        }
    }
    out << A.rows() << " " << A.cols() << " " << count << "\n";
    char buf[64];
    for (int i = 0; i < A.rows(); ++i) {
        auto cols = A.row_cols(i);
        auto vals = A.row_values(i);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (as_symmetric && cols[k] > i) continue;
            std::snprintf(buf, sizeof(buf), "%.17g", vals[k]);
            out << (i + 1) << " " << (cols[k] + 1) << " " << buf << "\n";
        }
    }
}

}  // namespace vmg
