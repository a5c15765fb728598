#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "akjoint/errors.hpp"
#include "akjoint/gaussian.hpp"
#include "akjoint/phase_space.hpp"

namespace akjoint {

/// Masses and coupling of H = Σ p_j²/2m_j + κ(x3 p1 + p3 p2).
///
/// κ = 0 is admitted (the free-particle limit used by the kernel checks);
/// operations built around the measurement time t = 1/κ require κ > 0 and
/// say so individually.
struct HamiltonianParams {
    double m1 = 1.0, m2 = 1.0, m3 = 1.0;
    double kappa = 1.0;

    void validate() const {
        if (!(m1 > 0.0) || !(m2 > 0.0) || !(m3 > 0.0))
            throw InvalidParameters("masses must be strictly positive");
        if (!(kappa >= 0.0))
            throw InvalidParameters("coupling must be nonnegative");
    }

    double b() const { return m2 * m3 * kappa * kappa - 1.0; }
    double a(double t) const { return 12.0 * m3 + m1 * kappa * kappa * t * t; }
};

/// Generator K of the Hamilton equations ṙ = K r:
///   ẋ1 = p1/m1 + κ x3,  ẋ2 = p2/m2 + κ p3,  ẋ3 = p3/m3 + κ p2,
///   ṗ1 = ṗ2 = 0,        ṗ3 = −κ p1.
/// K is nilpotent: K⁴ = 0.
inline Mat6 drift_matrix(const HamiltonianParams& h) {
    h.validate();
    Mat6 k = Mat6::Zero();
    k(0, 2) = h.kappa;
    k(0, 3) = 1.0 / h.m1;
    k(1, 4) = 1.0 / h.m2;
    k(1, 5) = h.kappa;
    k(2, 4) = h.kappa;
    k(2, 5) = 1.0 / h.m3;
    k(5, 3) = -h.kappa;
    return k;
}

struct SymplecticMap {
    Mat6 matrix = Mat6::Identity();
    double time = 0.0;

    /// Max-abs entry of SᵀΩS − Ω; zero (to roundoff) for any valid map.
    double symplectic_defect() const {
        const Mat6 omega = symplectic_form();
        return (matrix.transpose() * omega * matrix - omega).cwiseAbs().maxCoeff();
    }
};

/// S(t) = exp(tK), exact because K is nilpotent of degree 4.
inline SymplecticMap symplectic_map(const HamiltonianParams& h, double t) {
    if (!(t >= 0.0)) throw InvalidParameters("propagation time must be nonnegative");
    const Mat6 k = drift_matrix(h);
    const Mat6 k2 = k * k;
    const Mat6 k3 = k2 * k;
    SymplecticMap s;
    s.matrix = Mat6::Identity() + t * k + (t * t / 2.0) * k2 + (t * t * t / 6.0) * k3;
    s.time = t;
    return s;
}

/// mean' = S mean, cov' = S cov Sᵀ.
inline PhaseSpaceMoments propagate_moments(const PhaseSpaceMoments& state,
                                           const SymplecticMap& map) {
    PhaseSpaceMoments out;
    out.mean = map.matrix * state.mean;
    out.cov = map.matrix * state.cov * map.matrix.transpose();
    return out;
}

/// Meter moments at t = 1/κ in the large-κ limit:
///   Δx1²' = Δx1² + Δx3² + Δp2²/4 + α,   ⟨x1⟩' = ⟨x1⟩ + ⟨x3⟩ + ⟨p2⟩/2,
///   Δx2²' = Δx2² + Δp3² + Δp1²/4 − β,   ⟨x2⟩' = ⟨x2⟩ + ⟨p3⟩ − ⟨p1⟩/2,
/// with α, β the symmetrized (x1,p2) and (x2,p1) covariance entries.
struct AsymptoticMoments {
    double var_x1, var_x2;
    double mean_x1, mean_x2;
};

inline AsymptoticMoments asymptotic_map(const PhaseSpaceMoments& state) {
    const double alpha = state.cov(0, 4);
    const double beta = state.cov(1, 3);
    AsymptoticMoments out;
    out.var_x1 = state.cov(0, 0) + state.cov(2, 2) + 0.25 * state.cov(4, 4) + alpha;
    out.var_x2 = state.cov(1, 1) + state.cov(5, 5) + 0.25 * state.cov(3, 3) - beta;
    out.mean_x1 = state.mean(0) + state.mean(2) + 0.5 * state.mean(4);
    out.mean_x2 = state.mean(1) + state.mean(5) - 0.5 * state.mean(3);
    if (!(out.var_x1 > 0.0) || !(out.var_x2 > 0.0))
        throw DegenerateState("asymptotic meter variance is nonpositive");
    return out;
}

struct ConvergenceEntry {
    double kappa;
    // |exact − asymptotic| for (Δx1², Δx2², ⟨x1⟩, ⟨x2⟩).
    std::array<double, 4> abs_error;
};

struct ConvergencePair {
    double kappa_lo, kappa_hi;
    std::array<double, 4> ratio;          // err(κ_lo)/err(κ_hi); NaN below floor
    std::array<bool, 4> below_floor;      // both errors negligible
    std::array<bool, 4> super_convergent; // decays faster than 2·(κ_hi/κ_lo)
};

struct ConvergenceReport {
    AsymptoticMoments asymptotic;
    std::vector<ConvergenceEntry> entries;
    std::vector<ConvergencePair> pairs;
};

/// Errors below this are treated as converged outright (states with
/// vanishing cross moments hit the asymptotic values to roundoff).
inline constexpr double kConvergenceErrorFloor = 1e-12;

/// Compares exact propagation at t = 1/κ against the asymptotic map over
/// an increasing κ ladder. The remainder is O(1/κ), so consecutive errors
/// must shrink by at least (κ_hi/κ_lo)/2; faster decay (states whose
/// first-order term vanishes) is flagged super_convergent and passes.
inline ConvergenceReport convergence_check(const PhaseSpaceMoments& state,
                                           const HamiltonianParams& h,
                                           const std::vector<double>& kappas) {
    h.validate();
    if (kappas.size() < 2)
        throw InvalidParameters("convergence check needs at least two couplings");
    for (std::size_t i = 0; i < kappas.size(); ++i) {
        if (!(kappas[i] > 0.0))
            throw InvalidParameters("couplings must be strictly positive");
        if (i > 0 && !(kappas[i] > kappas[i - 1]))
            throw InvalidParameters("couplings must be strictly increasing");
    }

    ConvergenceReport report;
    report.asymptotic = asymptotic_map(state);
    const std::array<double, 4> target = {report.asymptotic.var_x1, report.asymptotic.var_x2,
                                          report.asymptotic.mean_x1, report.asymptotic.mean_x2};
    for (double kappa : kappas) {
        HamiltonianParams hk = h;
        hk.kappa = kappa;
        const PhaseSpaceMoments ex = propagate_moments(state, symplectic_map(hk, 1.0 / kappa));
        const std::array<double, 4> exact = {ex.cov(0, 0), ex.cov(1, 1), ex.mean(0), ex.mean(1)};
        ConvergenceEntry e{kappa, {}};
        for (int c = 0; c < 4; ++c) e.abs_error[c] = std::abs(exact[c] - target[c]);
        report.entries.push_back(e);
    }

    for (std::size_t i = 0; i + 1 < report.entries.size(); ++i) {
        const auto& lo = report.entries[i];
        const auto& hi = report.entries[i + 1];
        ConvergencePair pr{lo.kappa, hi.kappa, {}, {}, {}};
        const double expected = hi.kappa / lo.kappa;  // first-order decay factor
        for (int c = 0; c < 4; ++c) {
            if (lo.abs_error[c] <= kConvergenceErrorFloor &&
                hi.abs_error[c] <= kConvergenceErrorFloor) {
                pr.below_floor[c] = true;
                pr.ratio[c] = std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            if (!(hi.abs_error[c] < lo.abs_error[c]))
                throw NonConvergence("errors do not decrease with increasing coupling");
            pr.ratio[c] = lo.abs_error[c] / hi.abs_error[c];
            if (pr.ratio[c] < 0.5 * expected)
                throw NonConvergence("error decays slower than first order in 1/coupling");
            pr.super_convergent[c] = pr.ratio[c] > 2.0 * expected;
        }
        report.pairs.push_back(pr);
    }
    return report;
}

} // namespace akjoint
