#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "akjoint/errors.hpp"
#include "akjoint/gaussian.hpp"

namespace akjoint {

namespace detail {

// Gauss-Kronrod 7/15 pair, positive half of the symmetric rule.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kGk15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGauss7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
void gk15_segment(const F& f, double a, double b, double& kronrod, double& err) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    double resk = kGk15Weights[7] * f(c);
    double resg = kGauss7Weights[3] * f(c);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kGk15Nodes[i];
        const double fsum = f(c - dx) + f(c + dx);
        resk += kGk15Weights[i] * fsum;
        if (i % 2 == 1) resg += kGauss7Weights[i / 2] * fsum;
    }
    kronrod = resk * h;
    err = std::abs((resk - resg) * h);
}

/// Adaptive integration with a global absolute accuracy target: keep
/// bisecting the segment with the largest error estimate until the summed
/// estimate meets the target (or its relative roundoff floor). Throws
/// NonConvergence when the depth or evaluation budget runs out first.
template <class F>
double adaptive_gk15(const F& f, double a, double b, double abs_tol, int max_depth,
                     long& evals_left) {
    struct Segment {
        double a, b, val, err;
        int depth;
    };
    auto evaluate = [&](double lo, double hi, int depth) {
        evals_left -= 15;
        if (evals_left < 0) throw NonConvergence("quadrature evaluation budget exhausted");
        Segment s{lo, hi, 0.0, 0.0, depth};
        gk15_segment(f, lo, hi, s.val, s.err);
        return s;
    };
    auto by_error = [](const Segment& x, const Segment& y) { return x.err < y.err; };

    std::vector<Segment> segments{evaluate(a, b, 0)};
    double total_val = segments[0].val;
    double total_err = segments[0].err;
    while (total_err > std::max(abs_tol, 1e-14 * std::abs(total_val))) {
        std::pop_heap(segments.begin(), segments.end(), by_error);
        const Segment worst = segments.back();
        segments.pop_back();
        if (worst.depth >= max_depth)
            throw NonConvergence(
                "quadrature did not reach the requested accuracy at max subdivisions");
        const double mid = 0.5 * (worst.a + worst.b);
        for (const Segment& child :
             {evaluate(worst.a, mid, worst.depth + 1), evaluate(mid, worst.b, worst.depth + 1)}) {
            segments.push_back(child);
            std::push_heap(segments.begin(), segments.end(), by_error);
        }
        total_val = 0.0;
        total_err = 0.0;
        for (const Segment& s : segments) {
            total_val += s.val;
            total_err += s.err;
        }
    }
    double sum = 0.0;
    for (const Segment& s : segments) sum += s.val;
    return sum;
}

} // namespace detail

struct QuadratureOptions {
    double abs_accuracy = 1e-8;  // target on the returned moment
    int max_depth = 24;
    double box_sigmas = 12.0;    // truncation: Gaussian tail mass < 1e-12
    long max_evaluations = 80000000;
};

/// Which first/second moment of (x1, x2, p1, p2) to evaluate. All second
/// moments are central; x–p pairs are symmetrized.
enum class ProbeMoment {
    MeanX1, MeanX2, MeanP1, MeanP2,
    VarX1, VarX2, VarP1, VarP2,
    CovX1X2, CovP1P2,
    CovX1P1, CovX2P2,
    Alpha,  // Cov(x1, p2)
    Beta    // Cov(x2, p1)
};

namespace detail {

struct ProbeIntegrator {
    Eigen::Matrix2d mr, mi;
    Eigen::Vector2d dr, di;
    Eigen::Vector2d center;
    double half_width;
    double q_max;
    double tol2d;
    int max_depth;
    long evals_left;

    ProbeIntegrator(const GaussianProbeParams& p, const QuadratureOptions& opt) {
        const Eigen::Matrix2cd m = probe_parameter_matrix(p);
        mr = m.real();
        mi = m.imag();
        dr << p.D1.real(), p.D2.real();
        di << p.D1.imag(), p.D2.imag();
        center = mr.llt().solve(dr);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(mr, Eigen::EigenvaluesOnly);
        const double sigma_max = std::sqrt(0.5 / es.eigenvalues().minCoeff());
        half_width = opt.box_sigmas * sigma_max;
        q_max = exponent(center(0), center(1));
        // Per-integral tolerance, scaled so that the quotient by the norm
        // integral still meets opt.abs_accuracy with wide margin.
        const double z_est = M_PI / std::sqrt(mr.determinant());
        tol2d = 1e-3 * opt.abs_accuracy * std::max(1.0, z_est);
        max_depth = opt.max_depth;
        evals_left = opt.max_evaluations;
    }

    double exponent(double x1, double x2) const {
        return -(mr(0, 0) * x1 * x1 + mr(1, 1) * x2 * x2 + 2.0 * mr(0, 1) * x1 * x2) +
               2.0 * (dr(0) * x1 + dr(1) * x2);
    }

    // |ψ|² rescaled so its maximum is 1 (cancels in every quotient).
    double weight(double x1, double x2) const { return std::exp(exponent(x1, x2) - q_max); }

    // w(x) = d − Mx; p̂_k ψ = −i w_k ψ.
    cplx w(int k, double x1, double x2) const {
        const cplx m0(mr(k, 0), mi(k, 0)), m1(mr(k, 1), mi(k, 1));
        return cplx(dr(k), di(k)) - m0 * x1 - m1 * x2;
    }

    double integrate(const std::function<double(double, double)>& poly) {
        const double a1 = center(0) - half_width, b1 = center(0) + half_width;
        const double a2 = center(1) - half_width, b2 = center(1) + half_width;
        const double inner_tol = 0.25 * tol2d / half_width;
        auto outer = [&](double x1) {
            auto inner = [&](double x2) { return poly(x1, x2) * weight(x1, x2); };
            return adaptive_gk15(inner, a2, b2, inner_tol, max_depth, evals_left);
        };
        return adaptive_gk15(outer, a1, b1, 0.5 * tol2d, max_depth, evals_left);
    }
};

} // namespace detail

/// Brute-force moment evaluation by adaptive 2D quadrature of the explicit
/// wave function; the independent oracle for the closed-form moments.
inline double moment_oracle(const GaussianProbeParams& p, ProbeMoment which,
                            const QuadratureOptions& opt = {}) {
    p.validate();
    detail::ProbeIntegrator gi(p, opt);

    auto one = [](double, double) { return 1.0; };
    auto x = [](int i) {
        return [i](double x1, double x2) { return i == 0 ? x1 : x2; };
    };
    auto p_mean = [&gi](int k) {
        return [&gi, k](double x1, double x2) { return gi.w(k, x1, x2).imag(); };
    };

    const double z = gi.integrate(one);
    auto mean_x = [&](int i) { return gi.integrate(x(i)) / z; };
    auto mean_p = [&](int k) { return gi.integrate(p_mean(k)) / z; };

    switch (which) {
        case ProbeMoment::MeanX1: return mean_x(0);
        case ProbeMoment::MeanX2: return mean_x(1);
        case ProbeMoment::MeanP1: return mean_p(0);
        case ProbeMoment::MeanP2: return mean_p(1);
        default: break;
    }

    auto raw_xx = [&](int i, int j) {
        return gi.integrate([i, j](double x1, double x2) {
            const double xi = (i == 0 ? x1 : x2), xj = (j == 0 ? x1 : x2);
            return xi * xj;
        }) / z;
    };
    auto raw_xp = [&](int i, int k) {  // symmetrized ⟨x_i p_k⟩
        return gi.integrate([&gi, i, k](double x1, double x2) {
            return (i == 0 ? x1 : x2) * gi.w(k, x1, x2).imag();
        }) / z;
    };
    auto raw_pp = [&](int k, int l) {
        return gi.integrate([&gi, k, l](double x1, double x2) {
            const cplx wk = gi.w(k, x1, x2), wl = gi.w(l, x1, x2);
            return wk.real() * wl.real() + wk.imag() * wl.imag();
        }) / z;
    };

    switch (which) {
        case ProbeMoment::VarX1: {
            const double m = mean_x(0);
            return raw_xx(0, 0) - m * m;
        }
        case ProbeMoment::VarX2: {
            const double m = mean_x(1);
            return raw_xx(1, 1) - m * m;
        }
        case ProbeMoment::VarP1: {
            const double m = mean_p(0);
            return raw_pp(0, 0) - m * m;
        }
        case ProbeMoment::VarP2: {
            const double m = mean_p(1);
            return raw_pp(1, 1) - m * m;
        }
        case ProbeMoment::CovX1X2: return raw_xx(0, 1) - mean_x(0) * mean_x(1);
        case ProbeMoment::CovP1P2: return raw_pp(0, 1) - mean_p(0) * mean_p(1);
        case ProbeMoment::CovX1P1: return raw_xp(0, 0) - mean_x(0) * mean_p(0);
        case ProbeMoment::CovX2P2: return raw_xp(1, 1) - mean_x(1) * mean_p(1);
        case ProbeMoment::Alpha: return raw_xp(0, 1) - mean_x(0) * mean_p(1);
        case ProbeMoment::Beta: return raw_xp(1, 0) - mean_x(1) * mean_p(0);
        default: throw InvalidParameters("unknown moment descriptor");
    }
}

/// Norm of the unnormalized wave function, ∫|ψ|² dx with N = 1; the
/// quadrature cross-check for norm_constant_sq().
inline double norm_integral_oracle(const GaussianProbeParams& p,
                                   const QuadratureOptions& opt = {}) {
    p.validate();
    detail::ProbeIntegrator gi(p, opt);
    const double z = gi.integrate([](double, double) { return 1.0; });
    return z * std::exp(gi.q_max);
}

} // namespace akjoint
