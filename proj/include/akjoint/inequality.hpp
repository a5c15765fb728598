#pragma once

#include <cmath>

#include "akjoint/dynamics.hpp"
#include "akjoint/errors.hpp"
#include "akjoint/gaussian.hpp"
#include "akjoint/phase_space.hpp"

namespace akjoint {

/// Γ = ½√K1 + ½√K2 + √K3, the lower bound on Δx1(1/κ)·Δx2(1/κ) for
/// separable probes; K_j = Δx_j²Δp_j². Equals 1 at the minimal-uncertainty
/// point K_j = 1/4.
inline double gamma_bound(double k1, double k2, double k3) {
    if (!(k1 > 0.0) || !(k2 > 0.0) || !(k3 > 0.0))
        throw InvalidParameters("uncertainty products must be strictly positive");
    return 0.5 * std::sqrt(k1) + 0.5 * std::sqrt(k2) + std::sqrt(k3);
}

/// The separable meter-variance product as a function of x = Δp1²Δp2² and
/// y = Δp2²Δp3²:
///   (K1+K2)/4 + K3 + K1K2/x + K2K3/y + K1 y/x + K3 x/(4y) + x/16 + y/4.
inline double separable_product_rhs(double k1, double k2, double k3, double x, double y) {
    return 0.25 * (k1 + k2) + k3 + k1 * k2 / x + k2 * k3 / y + k1 * y / x +
           0.25 * k3 * x / y + x / 16.0 + y / 4.0;
}

/// Residuals of the stationarity conditions ∂/∂x = 0, ∂/∂y = 0 of the
/// separable product; both vanish at the closed-form optimum.
inline std::pair<double, double> stationarity_residuals(double k1, double k2, double k3,
                                                        double x, double y) {
    const double rx = -k1 * k2 / (x * x) - k1 * y / (x * x) + 0.25 * k3 / y + 1.0 / 16.0;
    const double ry = -k2 * k3 / (y * y) + k1 / x - 0.25 * k3 * x / (y * y) + 0.25;
    return {rx, ry};
}

struct MinimizedProduct {
    double product_min;
    double x_opt;
    double y_opt;
};

/// Closed-form minimizer x = 4√(K1K2), y = 2√(K2K3); the minimized value
/// equals gamma_bound(K1,K2,K3)².
inline MinimizedProduct minimized_product(double k1, double k2, double k3) {
    if (!(k1 > 0.0) || !(k2 > 0.0) || !(k3 > 0.0))
        throw InvalidParameters("uncertainty products must be strictly positive");
    MinimizedProduct out;
    out.x_opt = 4.0 * std::sqrt(k1 * k2);
    out.y_opt = 2.0 * std::sqrt(k2 * k3);
    out.product_min = separable_product_rhs(k1, k2, k3, out.x_opt, out.y_opt);
    return out;
}

/// Correlated-probe variance product in terms of x, y, z = Δp3²Δp1² and
/// the cross correlations α, β. Diagnostic evaluator only: no minimization
/// over z is attempted.
inline double correlated_product_rhs(double k1, double k2, double k3, double x, double y,
                                     double z, double alpha, double beta) {
    return separable_product_rhs(k1, k2, k3, x, y) - alpha * beta +
           alpha * (k2 * std::sqrt(z / (x * y)) + std::sqrt(y * z / x) +
                    0.25 * std::sqrt(x * z / y)) -
           beta * (k1 * std::sqrt(y / (x * z)) + k3 * std::sqrt(x / (y * z)) +
                   0.25 * std::sqrt(x * y / z));
}

/// Δx1(1/κ)·Δx2(1/κ) from the asymptotic map.
inline double meter_product(const PhaseSpaceMoments& state) {
    const AsymptoticMoments a = asymptotic_map(state);
    return std::sqrt(a.var_x1 * a.var_x2);
}

/// The entangled probe family of the violation scan: real parts free,
/// imaginary parts tied by A_I = C_R C_I / B_R, B_I = C_R C_I / A_R.
inline GaussianProbeParams make_constrained_probe(double a_r, double b_r, double c_r,
                                                  double c_i) {
    if (!(a_r > 0.0) || !(b_r > 0.0) || !(a_r * b_r - c_r * c_r > 0.0))
        throw InvalidParameters("constrained probe violates normalizability");
    GaussianProbeParams p;
    p.A = cplx(a_r, c_r * c_i / b_r);
    p.B = cplx(b_r, c_r * c_i / a_r);
    p.C = cplx(c_r, c_i);
    return p;
}

/// Γ for the constrained probe with the minimal system:
///   Γ = ½ (1 + sqrt((A_R B_R + C_I²)/(A_R B_R − C_R²))).
inline double gamma_bound_constrained(double a_r, double b_r, double c_r, double c_i) {
    const double det = a_r * b_r - c_r * c_r;
    if (!(a_r > 0.0) || !(b_r > 0.0) || !(det > 0.0))
        throw InvalidParameters("constrained probe violates normalizability");
    return 0.5 * (1.0 + std::sqrt((a_r * b_r + c_i * c_i) / det));
}

/// Γ_C by moment propagation: constrained probe + minimal system,
/// Δx1(1/κ)·Δx2(1/κ) via the asymptotic map.
inline double gamma_c(double a_r, double b_r, double c_r, double c_i) {
    const GaussianProbeParams probe = make_constrained_probe(a_r, b_r, c_r, c_i);
    const GaussianSystemParams system{};  // A3 = 1: Δx3² = Δp3² = 1/2
    return meter_product(assemble_initial_state(probe, system));
}

/// Γ_C in closed form, √(f1 f2) / (8 √(A_R B_R) (A_R B_R − C_R²)) with
///   f1 = 4 A_R B_R + (A_R B_R − C_R²)(A_R B_R + 4 A_R + C_I² + 4 C_I),
///   f2 = 4 A_R B_R + (A_R B_R − C_R²)(A_R B_R + 4 B_R + C_I² − 4 C_I).
/// The independent second path checked against gamma_c everywhere.
inline double gamma_c_closed_form(double a_r, double b_r, double c_r, double c_i) {
    const double det = a_r * b_r - c_r * c_r;
    if (!(a_r > 0.0) || !(b_r > 0.0) || !(det > 0.0))
        throw InvalidParameters("constrained probe violates normalizability");
    const double ab = a_r * b_r;
    const double f1 = 4.0 * ab + det * (ab + 4.0 * a_r + c_i * c_i + 4.0 * c_i);
    const double f2 = 4.0 * ab + det * (ab + 4.0 * b_r + c_i * c_i - 4.0 * c_i);
    return std::sqrt(f1 * f2) / (8.0 * std::sqrt(ab) * det);
}

/// Everything the bound comparison needs for one initial state.
struct UncertaintyReport {
    double dx1sq_T, dx2sq_T;  // meter variances at t = 1/κ (large-κ map)
    double k1, k2, k3;
    double alpha, beta;
    double gamma;    // separable-case lower bound from the K_j
    double gamma_c;  // actual meter product for this state
    bool violates_generalized;  // gamma_c ≤ gamma
    bool violates_original;     // gamma_c < 1
};

inline UncertaintyReport uncertainty_report(const GaussianProbeParams& probe,
                                            const GaussianSystemParams& system) {
    const ProbeMomentSummary pm = probe_moments(probe);
    const SystemMomentSummary sm = system_moments(system);
    const PhaseSpaceMoments state = assemble_initial_state(probe, system);
    const AsymptoticMoments am = asymptotic_map(state);

    UncertaintyReport r;
    r.dx1sq_T = am.var_x1;
    r.dx2sq_T = am.var_x2;
    r.k1 = pm.dx1sq * pm.dp1sq;
    r.k2 = pm.dx2sq * pm.dp2sq;
    r.k3 = sm.dx3sq * sm.dp3sq;
    r.alpha = pm.alpha;
    r.beta = pm.beta;
    r.gamma = gamma_bound(r.k1, r.k2, r.k3);
    r.gamma_c = std::sqrt(am.var_x1 * am.var_x2);
    r.violates_generalized = r.gamma_c <= r.gamma;
    r.violates_original = r.gamma_c < 1.0;
    return r;
}

} // namespace akjoint
