#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace vmg {

/// Dense real grid function (solution, residual, source, error).
using Vector = std::vector<double>;

double dot(const Vector& x, const Vector& y);
double norm2(const Vector& x);
double norm_inf(const Vector& x);

/// y += a * x
void axpy(double a, const Vector& x, Vector& y);
void scale(Vector& x, double a);

Vector zeros(std::size_t n);

/// Throws if any entry is NaN or Inf.
void check_finite(const Vector& x, const char* context);

// Plain-text (one value per line) and binary little-endian float64 formats.
void write_vector_text(const Vector& x, const std::string& path);
Vector read_vector_text(const std::string& path);
void write_vector_binary(const Vector& x, const std::string& path);
Vector read_vector_binary(const std::string& path);

}  // namespace vmg
