#include "vmg/vector.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace vmg {

double dot(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("shape: dot of lengths " +
                                    std::to_string(x.size()) + " and " +
                                    std::to_string(y.size()));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(const Vector& x) { return std::sqrt(dot(x, x)); }

double norm_inf(const Vector& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

void axpy(double a, const Vector& x, Vector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("shape: axpy");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scale(Vector& x, double a) {
    for (double& v : x) v *= a;
}

Vector zeros(std::size_t n) { return Vector(n, 0.0); }

void check_finite(const Vector& x, const char* context) {
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw std::runtime_error(std::string("non-finite entry in ") +
                                     context);
        }
    }
}

void write_vector_text(const Vector& x, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out.precision(17);
    for (double v : x) out << v << '\n';
}

Vector read_vector_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Vector x;
    double v;
    while (in >> v) x.push_back(v);
    return x;
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary vector format assumes a little-endian host");

}  // namespace

void write_vector_binary(const Vector& x, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    std::uint64_t n = x.size();
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(x.data()),
              static_cast<std::streamsize>(n * sizeof(double)));
}

Vector read_vector_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    Vector x(n);
    in.read(reinterpret_cast<char*>(x.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw std::runtime_error("truncated vector file " + path);
    return x;
}

}  // namespace vmg
