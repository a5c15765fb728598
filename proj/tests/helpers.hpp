#pragma once

// Shared test utilities: RNG-driven parameter generators and the
// independent numerical oracles (boundary-value action, derivative-free
// minimizer). These live in test code on purpose: they must not share an
// algebra path with the implementations they check.

#include <cmath>
#include <random>

#include "akjoint/dynamics.hpp"
#include "akjoint/gaussian.hpp"
#include "akjoint/propagator.hpp"

namespace akjoint::testing {

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(unsigned long seed) : engine(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine);
    }
};

/// Random normalizable probe; complex parts bounded so moments stay mild.
inline GaussianProbeParams random_probe(Rng& rng, bool with_shift = true) {
    GaussianProbeParams p;
    do {
        p.A = {rng.uniform(0.3, 4.0), rng.uniform(-1.5, 1.5)};
        p.B = {rng.uniform(0.3, 4.0), rng.uniform(-1.5, 1.5)};
        p.C = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    } while (p.real_det() < 0.05);
    if (with_shift) {
        p.D1 = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        p.D2 = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    }
    return p;
}

inline GaussianSystemParams random_system(Rng& rng, bool with_shift = true) {
    GaussianSystemParams s;
    s.A3 = {rng.uniform(0.3, 3.0), rng.uniform(-1.5, 1.5)};
    if (with_shift) s.D3 = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    return s;
}

inline HamiltonianParams random_hamiltonian(Rng& rng, double kappa_lo = 0.1,
                                            double kappa_hi = 5.0) {
    HamiltonianParams h;
    do {
        h.m1 = rng.uniform(0.3, 4.0);
        h.m2 = rng.uniform(0.3, 4.0);
        h.m3 = rng.uniform(0.3, 4.0);
        h.kappa = rng.uniform(kappa_lo, kappa_hi);
    } while (std::abs(h.b()) < 1e-2);
    return h;
}

/// Boundary-value action oracle: solve the linear equations of motion by
/// shooting on the initial momenta (a 3x3 linear solve against the exact
/// flow), then integrate the Lagrangian by Gauss-Legendre. L(s) is a
/// quadratic polynomial in s, so the 5-point rule is exact.
inline double bvp_action_oracle(const HamiltonianParams& h, const KernelEndpoints& e) {
    const Mat6 flow = symplectic_map(h, e.t).matrix;
    const Mat3 sxx = flow.topLeftCorner<3, 3>();
    const Mat3 sxp = flow.topRightCorner<3, 3>();
    const Vec3 p0 = sxp.fullPivLu().solve(e.Q - sxx * e.q);
    Vec6 r0;
    r0 << e.q, p0;

    static const double xg[5] = {-0.906179845938664, -0.538469310105683, 0.0,
                                 0.538469310105683, 0.906179845938664};
    static const double wg[5] = {0.236926885056189, 0.478628670499366, 0.568888888888889,
                                 0.478628670499366, 0.236926885056189};
    const Mat6 gen = drift_matrix(h);
    const double b = h.b();
    double total = 0.0;
    for (int i = 0; i < 5; ++i) {
        const double s = 0.5 * e.t * (xg[i] + 1.0);
        const Vec6 r = symplectic_map(h, s).matrix * r0;
        const Vec6 v = gen * r;
        const double lagrangian =
            0.5 * h.m1 * std::pow(v(0) - h.kappa * r(2), 2) -
            0.5 / b *
                (h.m2 * v(1) * v(1) + h.m3 * v(2) * v(2) - 2.0 * h.kappa * h.m2 * h.m3 * v(1) * v(2));
        total += 0.5 * e.t * wg[i] * lagrangian;
    }
    return total;
}

/// Derivative-free 1D golden-section minimization on [lo, hi].
template <class F>
double golden_minimize(const F& f, double lo, double hi, int iters = 80) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Generic 2D minimizer over (x, y) in (0, inf)^2: coordinate descent with
/// golden-section line searches in log coordinates. Independent of any
/// closed-form stationarity solution.
template <class F>
double minimize_2d(const F& f, double& x, double& y) {
    double lx = std::log(x), ly = std::log(y);
    for (int sweep = 0; sweep < 60; ++sweep) {
        const double span = sweep < 4 ? 6.0 : 1.0 / (1 << std::min(sweep / 4, 20));
        lx = golden_minimize([&](double u) { return f(std::exp(u), std::exp(ly)); }, lx - span,
                             lx + span);
        ly = golden_minimize([&](double u) { return f(std::exp(lx), std::exp(u)); }, ly - span,
                             ly + span);
    }
    x = std::exp(lx);
    y = std::exp(ly);
    return f(x, y);
}

} // namespace akjoint::testing
