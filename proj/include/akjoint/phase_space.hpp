#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "akjoint/errors.hpp"

namespace akjoint {

using cplx = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat3c = Eigen::Matrix3cd;
using Mat6c = Eigen::Matrix<cplx, 6, 6>;
using Vec3c = Eigen::Vector3cd;

/// Mode ordering is fixed globally to (x1, x2, x3, p1, p2, p3):
/// position of mode j at index j, momentum of mode j at index 3 + j.
inline constexpr int kModes = 3;

inline int position_index(int mode) { return mode; }
inline int momentum_index(int mode) { return kModes + mode; }

/// Canonical symplectic form for the (x..., p...) ordering.
inline Mat6 symplectic_form() {
    Mat6 omega = Mat6::Zero();
    omega.topRightCorner<3, 3>() = Mat3::Identity();
    omega.bottomLeftCorner<3, 3>() = -Mat3::Identity();
    return omega;
}

/// Slack allowed on the exact-zero boundary of cov + iΩ/2 ⪰ 0.
inline constexpr double kPhysicalityTol = 1e-10;

/// First and second moments of a 3-mode state. Off-diagonal x–p entries
/// are symmetrized: cov(i,j) = ⟨{r_i, r_j}⟩/2 − ⟨r_i⟩⟨r_j⟩.
struct PhaseSpaceMoments {
    Vec6 mean = Vec6::Zero();
    Mat6 cov = Mat6::Zero();

    /// Smallest eigenvalue of the Hermitian matrix cov + iΩ/2.
    /// Nonnegative (within tolerance) iff the state is physical.
    double min_symplectic_eigenvalue() const {
        Mat6c h = cov.cast<cplx>() + cplx(0.0, 0.5) * symplectic_form().cast<cplx>();
        Eigen::SelfAdjointEigenSolver<Mat6c> es(h, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    bool is_physical(double tol = kPhysicalityTol) const {
        return min_symplectic_eigenvalue() >= -tol;
    }

    double variance_x(int mode) const { return cov(mode, mode); }
    double variance_p(int mode) const { return cov(3 + mode, 3 + mode); }

    /// Δx_j · Δp_j for one mode.
    double heisenberg_product(int mode) const {
        return std::sqrt(variance_x(mode) * variance_p(mode));
    }

    void validate(double tol = kPhysicalityTol) const {
        const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
        if (!cov.isApprox(cov.transpose(), 1e-12))
            throw InvalidParameters("covariance matrix is not symmetric");
        for (int i = 0; i < 6; ++i)
            if (!(cov(i, i) > 0.0))
                throw InvalidParameters("covariance diagonal must be strictly positive");
        if (!mean.allFinite() || !cov.allFinite())
            throw InvalidParameters("moments must be finite");
        if (min_symplectic_eigenvalue() < -tol * scale)
            throw InvalidParameters("state violates cov + iΩ/2 ⪰ 0");
    }
};

} // namespace akjoint
