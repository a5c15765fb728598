#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "akjoint/errors.hpp"
#include "akjoint/phase_space.hpp"

namespace akjoint {

/// Two-mode probe wave function
///   ψ(x1, x2) = N exp(−A x1²/2 − B x2²/2 + C x1 x2 + D1 x1 + D2 x2),
/// all parameters complex, ħ = 1. Normalizable iff Re A > 0, Re B > 0 and
/// Re A · Re B − (Re C)² > 0.
struct GaussianProbeParams {
    cplx A{1.0, 0.0};
    cplx B{1.0, 0.0};
    cplx C{0.0, 0.0};
    cplx D1{0.0, 0.0};
    cplx D2{0.0, 0.0};

    double real_det() const { return A.real() * B.real() - C.real() * C.real(); }

    void validate() const {
        if (!(A.real() > 0.0) || !(B.real() > 0.0))
            throw InvalidParameters("probe requires Re(A) > 0 and Re(B) > 0");
        if (!(real_det() > 0.0))
            throw InvalidParameters("probe requires Re(A)Re(B) - Re(C)^2 > 0");
    }

    /// |N|² of the normalized wave function.
    double norm_constant_sq() const {
        validate();
        const double det = real_det();
        const double ar = A.real(), br = B.real(), cr = C.real();
        const double d1r = D1.real(), d2r = D2.real();
        const double expo = -(ar * d2r * d2r + br * d1r * d1r + 2.0 * d1r * d2r * cr) / det;
        return std::sqrt(det) / M_PI * std::exp(expo);
    }
};

/// One-mode system wave function ψ(x3) ∝ exp(−A3 x3²/2 + D3 x3).
struct GaussianSystemParams {
    cplx A3{1.0, 0.0};
    cplx D3{0.0, 0.0};

    void validate() const {
        if (!(A3.real() > 0.0))
            throw InvalidParameters("system requires Re(A3) > 0");
    }
};

/// Moments of an N-mode Gaussian ψ ∝ exp(−½ xᵀM x + dᵀx), in the
/// (x..., p...) ordering with symmetrized x–p covariances.
template <int N>
struct GaussianMoments {
    Eigen::Matrix<double, 2 * N, 1> mean;
    Eigen::Matrix<double, 2 * N, 2 * N> cov;
};

/// For M = M_R + iM_I (complex symmetric, M_R positive definite):
///   cov_xx = M_R⁻¹/2,            cov_xp = −M_R⁻¹ M_I / 2,
///   cov_pp = (M_R + M_I M_R⁻¹ M_I)/2,
///   ⟨x⟩ = M_R⁻¹ d_R,             ⟨p⟩ = d_I − M_I ⟨x⟩.
template <int N>
GaussianMoments<N> moments_of_complex_gaussian(const Eigen::Matrix<cplx, N, N>& m,
                                               const Eigen::Matrix<cplx, N, 1>& d) {
    const Eigen::Matrix<double, N, N> mr = m.real();
    const Eigen::Matrix<double, N, N> mi = m.imag();
    if (!mr.isApprox(mr.transpose(), 1e-10) || !mi.isApprox(mi.transpose(), 1e-10))
        throw InvalidParameters("Gaussian parameter matrix must be symmetric");
    Eigen::LLT<Eigen::Matrix<double, N, N>> llt(mr);
    if (llt.info() != Eigen::Success)
        throw InvalidParameters("Re(M) must be positive definite (state not normalizable)");

    const Eigen::Matrix<double, N, N> mr_inv = llt.solve(Eigen::Matrix<double, N, N>::Identity());
    GaussianMoments<N> out;
    const Eigen::Matrix<double, N, N> cxx = 0.5 * mr_inv;
    const Eigen::Matrix<double, N, N> cxp = -0.5 * mr_inv * mi;
    const Eigen::Matrix<double, N, N> cpp = 0.5 * (mr + mi * mr_inv * mi);
    const Eigen::Matrix<double, N, 1> mx = mr_inv * d.real();
    const Eigen::Matrix<double, N, 1> mp = d.imag() - mi * mx;

    out.cov.template topLeftCorner<N, N>() = cxx;
    out.cov.template topRightCorner<N, N>() = cxp;
    out.cov.template bottomLeftCorner<N, N>() = cxp.transpose();
    out.cov.template bottomRightCorner<N, N>() = cpp;
    out.mean.template head<N>() = mx;
    out.mean.template tail<N>() = mp;
    return out;
}

/// Complex symmetric parameter matrix of the probe, M = [[A, −C], [−C, B]].
inline Eigen::Matrix2cd probe_parameter_matrix(const GaussianProbeParams& p) {
    Eigen::Matrix2cd m;
    m << p.A, -p.C, -p.C, p.B;
    return m;
}

/// The probe moments that enter the propagated variances directly.
struct ProbeMomentSummary {
    double dx1sq, dx2sq, dp1sq, dp2sq;
    double alpha;  // ⟨x̂1 p̂2⟩ − ⟨x̂1⟩⟨p̂2⟩
    double beta;   // ⟨x̂2 p̂1⟩ − ⟨x̂2⟩⟨p̂1⟩
};

/// Closed-form probe moments. Independent of D1, D2.
inline ProbeMomentSummary probe_moments(const GaussianProbeParams& p) {
    p.validate();
    const double ar = p.A.real(), ai = p.A.imag();
    const double br = p.B.real(), bi = p.B.imag();
    const double cr = p.C.real(), ci = p.C.imag();
    const double det = p.real_det();
    ProbeMomentSummary s;
    s.dx1sq = 0.5 * br / det;
    s.dx2sq = 0.5 * ar / det;
    s.dp1sq = 0.5 * ar + (ar * ci * ci + ai * ai * br - 2.0 * ai * cr * ci) / (2.0 * det);
    s.dp2sq = 0.5 * br + (ar * bi * bi + br * ci * ci - 2.0 * bi * cr * ci) / (2.0 * det);
    s.alpha = (br * ci - bi * cr) / (2.0 * det);
    s.beta = (ar * ci - ai * cr) / (2.0 * det);
    return s;
}

/// Mean and covariance of the probe in ordering (x1, x2, p1, p2).
struct TwoModeMoments {
    Eigen::Vector4d mean;
    Eigen::Matrix4d cov;

    double alpha() const { return cov(0, 3); }  // (x1, p2)
    double beta() const { return cov(1, 2); }   // (x2, p1)
};

inline TwoModeMoments full_probe_moments(const GaussianProbeParams& p) {
    p.validate();
    Eigen::Vector2cd d;
    d << p.D1, p.D2;
    const auto g = moments_of_complex_gaussian<2>(probe_parameter_matrix(p), d);
    return TwoModeMoments{g.mean, g.cov};
}

struct SystemMomentSummary {
    double dx3sq, dp3sq;
    double mean_x3, mean_p3;
    double cov_x3p3;  // symmetrized
};

inline SystemMomentSummary system_moments(const GaussianSystemParams& p) {
    p.validate();
    Eigen::Matrix<cplx, 1, 1> m;
    m(0, 0) = p.A3;
    Eigen::Matrix<cplx, 1, 1> d;
    d(0, 0) = p.D3;
    const auto g = moments_of_complex_gaussian<1>(m, d);
    return SystemMomentSummary{g.cov(0, 0), g.cov(1, 1), g.mean(0), g.mean(1), g.cov(0, 1)};
}

/// Initial state Ψ_in = ψ(x1, x2) φ(x3): block assembly with exactly zero
/// probe–system cross covariance. Result is checked against the
/// physicality invariant.
inline PhaseSpaceMoments assemble_initial_state(const GaussianProbeParams& probe,
                                                const GaussianSystemParams& system) {
    const TwoModeMoments pm = full_probe_moments(probe);
    const SystemMomentSummary sm = system_moments(system);

    PhaseSpaceMoments st;
    const int probe_idx[4] = {0, 1, 3, 4};  // (x1, x2, p1, p2)
    for (int a = 0; a < 4; ++a) {
        st.mean(probe_idx[a]) = pm.mean(a);
        for (int b = 0; b < 4; ++b) st.cov(probe_idx[a], probe_idx[b]) = pm.cov(a, b);
    }
    const int sys_idx[2] = {2, 5};  // (x3, p3)
    const double sys_cov[2][2] = {{sm.dx3sq, sm.cov_x3p3}, {sm.cov_x3p3, sm.dp3sq}};
    const double sys_mean[2] = {sm.mean_x3, sm.mean_p3};
    for (int a = 0; a < 2; ++a) {
        st.mean(sys_idx[a]) = sys_mean[a];
        for (int b = 0; b < 2; ++b) st.cov(sys_idx[a], sys_idx[b]) = sys_cov[a][b];
    }
    st.validate();
    return st;
}

} // namespace akjoint
