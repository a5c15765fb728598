#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "akjoint/dynamics.hpp"
#include "akjoint/errors.hpp"
#include "akjoint/gaussian.hpp"
#include "akjoint/phase_space.hpp"

namespace akjoint {

/// The kernel formulas are singular where a(t)·b·t = 0; b = m2 m3 κ² − 1
/// crossing zero is rejected rather than taken as a limit.
inline constexpr double kSingularBTol = 1e-9;

inline void require_regular_time(const HamiltonianParams& h, double t) {
    h.validate();
    if (!(t > 0.0)) throw SingularTime("kernel requires t > 0");
    if (std::abs(h.b()) < kSingularBTol)
        throw SingularTime("singular configuration: |m2 m3 kappa^2 - 1| < 1e-9");
    if (!(h.a(t) > 0.0)) throw SingularTime("kernel requires a(t) > 0");
}

/// Endpoints of a kernel evaluation: x_j(0) = q_j, x_j(t) = Q_j.
struct KernelEndpoints {
    Vec3 q = Vec3::Zero();
    Vec3 Q = Vec3::Zero();
    double t = 1.0;
};

struct KernelEvaluation {
    double action;    // S_cl
    cplx prefactor;   // F(t)
    cplx kernel;      // F(t) e^{i S_cl}
};

/// Classical action of the boundary-value trajectory, in the z variables
/// z1 = Q1 − q1, z2 = Q2 − q2, z± = Q3 ± q3:
///
///   S_cl = [ 12 m1 m3 b z1² − m2 a z2² − m3 a z₋² + 3 m1 m3 κ²t² b z₊²
///            − 12 m1 m3 κ t b z1 z₊ + 2 m2 m3 κ a z2 z₋ ] / (2 a b t).
inline double classical_action(const HamiltonianParams& h, const KernelEndpoints& e) {
    require_regular_time(h, e.t);
    const double a = h.a(e.t);
    const double b = h.b();
    const double k = h.kappa;
    const double t = e.t;
    const double z1 = e.Q(0) - e.q(0);
    const double z2 = e.Q(1) - e.q(1);
    const double zp = e.Q(2) + e.q(2);
    const double zm = e.Q(2) - e.q(2);
    return (12.0 * h.m1 * h.m3 * b * z1 * z1 - h.m2 * a * z2 * z2 - h.m3 * a * zm * zm +
            3.0 * h.m1 * h.m3 * k * k * t * t * b * zp * zp -
            12.0 * h.m1 * h.m3 * k * t * b * z1 * zp + 2.0 * h.m2 * h.m3 * k * a * z2 * zm) /
           (2.0 * a * b * t);
}

/// F(t) = sqrt(3 m1 m2 m3² / (2π³ i b t³ a(t))), principal branch.
inline cplx prefactor(const HamiltonianParams& h, double t) {
    require_regular_time(h, t);
    const cplx denom = cplx(0.0, 2.0 * M_PI * M_PI * M_PI) * h.b() * t * t * t * h.a(t);
    return std::sqrt(3.0 * h.m1 * h.m2 * h.m3 * h.m3 / denom);
}

inline KernelEvaluation kernel(const HamiltonianParams& h, const KernelEndpoints& e) {
    KernelEvaluation out;
    out.action = classical_action(h, e);
    out.prefactor = prefactor(h, e.t);
    out.kernel = out.prefactor * std::exp(cplx(0.0, out.action));
    return out;
}

/// S_cl(Q, q) = ½ QᵀP Q + QᵀR q + ½ qᵀS q. Exact polarization extraction
/// (S_cl is a homogeneous quadratic form in the endpoints).
struct ActionQuadraticForm {
    Mat3 final_block;    // P
    Mat3 cross_block;    // R
    Mat3 initial_block;  // S
};

inline ActionQuadraticForm action_quadratic_form(const HamiltonianParams& h, double t) {
    require_regular_time(h, t);
    auto s = [&](const Vec3& qq, const Vec3& qf) {
        return classical_action(h, KernelEndpoints{qq, qf, t});
    };
    const Vec3 zero = Vec3::Zero();
    ActionQuadraticForm f;
    for (int i = 0; i < 3; ++i) {
        const Vec3 ei = Vec3::Unit(i);
        f.final_block(i, i) = s(zero, ei) + s(zero, -ei);
        f.initial_block(i, i) = s(ei, zero) + s(-ei, zero);
        for (int j = i + 1; j < 3; ++j) {
            const Vec3 ej = Vec3::Unit(j);
            f.final_block(i, j) = f.final_block(j, i) =
                s(zero, ei + ej) - s(zero, ei) - s(zero, ej);
            f.initial_block(i, j) = f.initial_block(j, i) =
                s(ei + ej, zero) - s(ei, zero) - s(ej, zero);
        }
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const Vec3 ei = Vec3::Unit(i), ej = Vec3::Unit(j);
            f.cross_block(i, j) = s(ej, ei) - s(zero, ei) - s(ej, zero);
        }
    return f;
}

/// ∫ exp(i(½ xᵀW x + vᵀx)) d³x for real symmetric nonsingular W:
///   (2π)^{3/2} |det W|^{−1/2} exp(iπσ(W)/4) exp(−i vᵀW⁻¹v/2),
/// σ the signature of W.
inline cplx fresnel_integral3(const Mat3& w, const Vec3& v) {
    Eigen::SelfAdjointEigenSolver<Mat3> es(w);
    const Vec3 ev = es.eigenvalues();
    int signature = 0;
    double absdet = 1.0;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(ev(i)) < 1e-12)
            throw SingularQuadraticForm("Fresnel quadratic form is singular");
        signature += ev(i) > 0.0 ? 1 : -1;
        absdet *= std::abs(ev(i));
    }
    const Vec3 rotated = es.eigenvectors().transpose() * v;
    const Vec3 winv_v = es.eigenvectors() * rotated.cwiseQuotient(ev);
    const double phase = 0.25 * M_PI * signature - 0.5 * v.dot(winv_v);
    return std::pow(2.0 * M_PI, 1.5) / std::sqrt(absdet) * std::exp(cplx(0.0, phase));
}

/// Closed-form evaluation of ∫d³x K[Q : x : t1] K[x : q : t − t1]; the
/// integrand is exp of a quadratic in x. Equals kernel(h, {q, Q, t}) up to
/// a global sign from the prefactor branch.
inline cplx compose_kernels(const HamiltonianParams& h, const Vec3& q, const Vec3& Q,
                            double t, double t1) {
    if (!(t1 > 0.0) || !(t1 < t)) throw InvalidParameters("split time must satisfy 0 < t1 < t");
    const double t2 = t - t1;
    const ActionQuadraticForm f1 = action_quadratic_form(h, t1);  // x -> Q leg
    const ActionQuadraticForm f2 = action_quadratic_form(h, t2);  // q -> x leg
    const Mat3 w = f1.initial_block + f2.final_block;
    const Vec3 v = f1.cross_block.transpose() * Q + f2.cross_block * q;
    const double c = 0.5 * Q.dot(f1.final_block * Q) + 0.5 * q.dot(f2.initial_block * q);
    return prefactor(h, t1) * prefactor(h, t2) * std::exp(cplx(0.0, c)) * fresnel_integral3(w, v);
}

/// Evolves Ψ_in = ψ(x1,x2) φ(x3) through the kernel in closed form. The
/// q integral is a complex Gaussian; quadratic completion gives the output
/// Gaussian parameters, whose moments are the independent cross-check of
/// the symplectic propagation path.
inline PhaseSpaceMoments kernel_evolve_gaussian(const HamiltonianParams& h,
                                                const GaussianProbeParams& probe,
                                                const GaussianSystemParams& system,
                                                double t) {
    probe.validate();
    system.validate();
    const ActionQuadraticForm f = action_quadratic_form(h, t);

    Mat3c m0 = Mat3c::Zero();
    m0.topLeftCorner<2, 2>() = probe_parameter_matrix(probe);
    m0(2, 2) = system.A3;
    Vec3c d0;
    d0 << probe.D1, probe.D2, system.D3;

    const Mat3c mq = m0 - cplx(0.0, 1.0) * f.initial_block.cast<cplx>();
    Eigen::FullPivLU<Mat3c> lu(mq);
    if (!lu.isInvertible())
        throw SingularQuadraticForm("q-space quadratic form is not invertible");
    const Mat3c g = lu.inverse();
    const Mat3c rc = f.cross_block.cast<cplx>();

    const Mat3c m_out = rc * g * rc.transpose() - cplx(0.0, 1.0) * f.final_block.cast<cplx>();
    const Vec3c d_out = cplx(0.0, 1.0) * rc * g * d0;

    const auto moments = moments_of_complex_gaussian<3>(m_out, d_out);
    PhaseSpaceMoments out;
    out.mean = moments.mean;
    out.cov = moments.cov;
    return out;
}

/// Change of variables used to reduce the product of delta functions in
/// the large-κ normalization argument; coefficient a = m1 + 12 m3.
inline Mat3 pointer_variable_map(const HamiltonianParams& h) {
    h.validate();
    if (!(h.kappa > 0.0)) throw InvalidParameters("map requires kappa > 0");
    const double a = h.m1 + 12.0 * h.m3;
    Mat3 j;
    j << 1.0, 0.0, 0.5,
         0.0, 1.0 / (h.m3 * h.kappa), -1.0,
         6.0 * h.m1 * h.m3 * h.kappa / a, -1.0, 3.0 * h.m1 * h.m3 * h.kappa / a;
    return j;
}

inline Mat3 pointer_variable_map_inverse(const HamiltonianParams& h) {
    h.validate();
    if (!(h.kappa > 0.0)) throw InvalidParameters("map requires kappa > 0");
    const double a = h.m1 + 12.0 * h.m3;
    Mat3 j;
    j << 1.0 - 3.0 * h.m1 / a, 0.5, 0.5 / (h.m3 * h.kappa),
         6.0 * h.m1 * h.m3 * h.kappa / a, 0.0, -1.0,
         6.0 * h.m1 / a, -1.0, -1.0 / (h.m3 * h.kappa);
    return j;
}

/// |det| of the forward map; exactly 1 for every valid parameter set,
/// which is what makes dq1 dq2 dq3 = dX dY dZ.
inline double jacobian_unit_check(const HamiltonianParams& h) {
    return std::abs(pointer_variable_map(h).determinant());
}

} // namespace akjoint
