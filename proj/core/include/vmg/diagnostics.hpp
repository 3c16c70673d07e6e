#pragma once

#include <optional>
#include <vector>

#include "vmg/transfer.hpp"

namespace vmg {

struct SmoothnessReport {
    double m_weak = 0.0;
    double m_strong = 0.0;
    double xi = 0.0;
    double chi = 0.0;
    double euclidean_factor_sq = 0.0;
    double energy_factor_sq = 0.0;
};

struct SaturationFit {
    double C = 0.0;
    double k = 0.0;
    int levels_used = 0;
    double residual_of_fit = 0.0;
};

/// M_w(e) = <Le,e> / (lambda_max <e,e>); in (0,1] up to the spectral
/// estimate's tolerance. Small values mark algebraically smooth errors.
double weak_measure(const Level& level, const Vector& e);

/// M_s(e) = <Le,Le> / (lambda_max <Le,e>).
double strong_measure(const Level& level, const Vector& e);

/// Applies the error propagation operator directly and populates the
/// measured factors together with the xi/chi decompositions:
///   ||Ge||^2/||e||^2   = 1 - (1 + xi)  M_w(e)
///   ||Ge||_L^2/||e||_L^2 = 1 - (1 + chi) M_s(e)
SmoothnessReport relaxation_identity_check(const Level& level,
                                           const Vector& e);

/// E(v) = <Lv,v> - 2<v,g>; minimized exactly by the solution of L v = g.
double energy_functional(const CsrMatrix& L, const Vector& v,
                         const Vector& g);

/// Geometric mean of the last max(3, len/3) successive residual ratios.
double asymptotic_convergence_factor(const std::vector<double>& history);

/// Least-squares fit of log e = log C + k log h. With fixed_k only C is
/// fitted. residual_of_fit is the RMS of the log-residuals.
SaturationFit estimate_saturation(const std::vector<double>& energy_errors,
                                  const std::vector<double>& mesh_sizes,
                                  std::optional<double> fixed_k = {});

/// ceil(k / |log2 rho|): cycles needed per refinement to keep pace with an
/// O(h^k) accuracy target at per-cycle factor rho.
int cycles_needed(double rho, double k);

}  // namespace vmg
