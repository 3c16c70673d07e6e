#include "vmg/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "vmg/smoother.hpp"

namespace vmg {

namespace {

void require_nonzero(const Vector& e) {
    for (double v : e) {
        if (v != 0.0) return;
    }
    throw std::invalid_argument("undefined measure: zero vector");
}

}  // namespace

double weak_measure(const Level& level, const Vector& e) {
    require_nonzero(e);
    double lambda = level.spectral.lambda_max;
    return dot(spmv(level.op, e), e) / (lambda * dot(e, e));
}

double strong_measure(const Level& level, const Vector& e) {
    require_nonzero(e);
    double lambda = level.spectral.lambda_max;
    Vector le = spmv(level.op, e);
    return dot(le, le) / (lambda * dot(le, e));
}

SmoothnessReport relaxation_identity_check(const Level& level,
                                           const Vector& e) {
    require_nonzero(e);
    const CsrMatrix& L = level.op;
    double lambda = level.spectral.lambda_max;

    Vector le = spmv(L, e);
    double ee = dot(e, e);
    double lee = dot(le, e);
    double lele = dot(le, le);
    Vector lle = spmv(L, le);
    double llele = dot(lle, le);

    SmoothnessReport rep;
    rep.m_weak = lee / (lambda * ee);
    rep.m_strong = lele / (lambda * lee);
    // both factors in [0,1): the next-order Rayleigh quotient relative to
    // the current one
    rep.xi = 1.0 - lele / (lambda * lee);
    rep.chi = 1.0 - llele / (lambda * lele);

    // Measured directly by applying the error propagation operator.
    Vector ge = error_propagation_apply(level, e);
    rep.euclidean_factor_sq = dot(ge, ge) / ee;
    rep.energy_factor_sq = dot(spmv(L, ge), ge) / lee;
    return rep;
}

double energy_functional(const CsrMatrix& L, const Vector& v,
                         const Vector& g) {
    return dot(spmv(L, v), v) - 2.0 * dot(v, g);
}

double asymptotic_convergence_factor(const std::vector<double>& history) {
    if (history.size() < 5) {
        throw std::invalid_argument("history too short for factor estimate");
    }
    for (double h : history) {
        if (h <= 0.0) {
            throw std::invalid_argument("history entries must be positive");
        }
    }
    std::size_t window =
        std::max<std::size_t>(3, history.size() / 3);  // skip transients
    std::size_t first = history.size() - 1 - window;
    double log_sum = 0.0;
    for (std::size_t i = first; i + 1 < history.size(); ++i) {
        log_sum += std::log(history[i + 1] / history[i]);
    }
    return std::exp(log_sum / static_cast<double>(window));
}

SaturationFit estimate_saturation(const std::vector<double>& energy_errors,
                                  const std::vector<double>& mesh_sizes,
                                  std::optional<double> fixed_k) {
    std::size_t n = energy_errors.size();
    if (mesh_sizes.size() != n) {
        throw std::invalid_argument("shape: error/mesh lists differ");
    }
    std::size_t min_points = fixed_k ? 2 : 3;
    if (n < min_points) {
        throw std::invalid_argument("insufficient points for saturation fit");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (energy_errors[i] <= 0.0 || mesh_sizes[i] <= 0.0) {
            throw std::invalid_argument("saturation fit needs positive inputs");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (mesh_sizes[i] == mesh_sizes[j]) {
                throw std::invalid_argument("mesh sizes must be distinct");
            }
        }
    }

    // log e = log C + k log h, unweighted least squares in log space.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::log(mesh_sizes[i]);
        double y = std::log(energy_errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double nn = static_cast<double>(n);

    SaturationFit fit;
    fit.levels_used = static_cast<int>(n);
    if (fixed_k) {
        fit.k = *fixed_k;
        fit.C = std::exp((sy - fit.k * sx) / nn);
    } else {
        double denom = nn * sxx - sx * sx;
        fit.k = (nn * sxy - sx * sy) / denom;
        fit.C = std::exp((sy - fit.k * sx) / nn);
    }

    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = std::log(energy_errors[i]) -
                   (std::log(fit.C) + fit.k * std::log(mesh_sizes[i]));
        ss += r * r;
    }
    fit.residual_of_fit = std::sqrt(ss / nn);
    return fit;
}

int cycles_needed(double rho, double k) {
    if (rho <= 0.0 || rho >= 1.0) {
        throw std::invalid_argument("rho must lie in (0,1)");
    }
    if (k <= 0.0) throw std::invalid_argument("k must be positive");
    return static_cast<int>(std::ceil(k / std::abs(std::log2(rho))));
}

}  // namespace vmg
