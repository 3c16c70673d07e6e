#pragma once

#include <string>

#include "vmg/sparse.hpp"

namespace vmg {

/// Matrix Market coordinate format, 1-based indices. Symmetric files store
/// the lower triangle; the reader mirrors it.
CsrMatrix read_matrix_market(const std::string& path);
void write_matrix_market(const CsrMatrix& A, const std::string& path,
                         bool as_symmetric = false);

}  // namespace vmg
