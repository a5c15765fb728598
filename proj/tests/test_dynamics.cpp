#include <catch2/catch_amalgamated.hpp>

#include "akjoint/dynamics.hpp"
#include "helpers.hpp"

using namespace akjoint;
using akjoint::testing::Rng;
using akjoint::testing::random_hamiltonian;
using akjoint::testing::random_probe;
using akjoint::testing::random_system;
using Catch::Approx;

TEST_CASE("drift_matrix: free particles at kappa = 0") {
    const Mat6 k = drift_matrix({2.0, 3.0, 5.0, 0.0});
    Mat6 expected = Mat6::Zero();
    expected(0, 3) = 0.5;
    expected(1, 4) = 1.0 / 3.0;
    expected(2, 5) = 0.2;
    CHECK((k - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("drift_matrix: generator is nilpotent of degree 4") {
    Rng rng(201);
    for (int i = 0; i < 20; ++i) {
        const Mat6 k = drift_matrix(random_hamiltonian(rng));
        const Mat6 k3 = k * k * k;
        CHECK(k3.cwiseAbs().maxCoeff() > 0.0);
        CHECK((k3 * k).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("drift_matrix: eliminating momenta reproduces the equations of motion") {
    // As row identities on the generator: with r'' = K^2 r and r' = K r,
    //   x1'' = kappa x3',   x2'' = kappa m3 x3'',
    //   (m3/b)(m2 kappa x2'' - x3'') = -m1 kappa (x1' - kappa x3).
    // The third is checked multiplied through by b; at m_j = kappa = 1 the
    // couplings sit exactly on b = 0 and both sides vanish there.
    Rng rng(202);
    for (int i = 0; i < 20; ++i) {
        const HamiltonianParams h = i == 0 ? HamiltonianParams{1, 1, 1, 1}
                                           : random_hamiltonian(rng);
        const Mat6 k = drift_matrix(h);
        const Mat6 k2 = k * k;
        CHECK((k2.row(0) - h.kappa * k.row(2)).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((k2.row(1) - h.kappa * h.m3 * k2.row(2)).cwiseAbs().maxCoeff() < 1e-14);
        Eigen::Matrix<double, 1, 6> x3_unit = Eigen::Matrix<double, 1, 6>::Zero();
        x3_unit(2) = 1.0;
        const Eigen::Matrix<double, 1, 6> lhs =
            h.m3 * (h.m2 * h.kappa * k2.row(1) - k2.row(2));
        const Eigen::Matrix<double, 1, 6> rhs =
            -h.b() * h.m1 * h.kappa * (k.row(0) - h.kappa * x3_unit);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("symplectic_map: identity at t = 0 and free streaming at kappa = 0") {
    CHECK((symplectic_map({1, 1, 1, 3.0}, 0.0).matrix - Mat6::Identity()).cwiseAbs().maxCoeff() ==
          0.0);

    const double t = 0.7;
    const Mat6 s = symplectic_map({2.0, 3.0, 5.0, 0.0}, t).matrix;
    Mat6 expected = Mat6::Identity();
    expected(0, 3) = t / 2.0;
    expected(1, 4) = t / 3.0;
    expected(2, 5) = t / 5.0;
    CHECK((s - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("symplectic_map: invariant and exact group property") {
    Rng rng(203);
    for (int i = 0; i < 30; ++i) {
        const HamiltonianParams h = random_hamiltonian(rng);
        const double t1 = rng.uniform(0.0, 2.0), t2 = rng.uniform(0.0, 2.0);
        const SymplecticMap s1 = symplectic_map(h, t1);
        const SymplecticMap s2 = symplectic_map(h, t2);
        const SymplecticMap s12 = symplectic_map(h, t1 + t2);
        CHECK(s1.symplectic_defect() < 1e-10);
        CHECK((s12.matrix - s1.matrix * s2.matrix).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(symplectic_map({1, 1, 1, 1}, -0.1), InvalidParameters);
}

TEST_CASE("symplectic_map: large-kappa rows approach the asymptotic coefficients") {
    for (double kappa : {1e3, 1e4}) {
        const Mat6 s = symplectic_map({1, 1, 1, kappa}, 1.0 / kappa).matrix;
        const double slack = 5.0 / kappa;
        // x1 row -> (1 on x1, 1 on x3, 1/2 on p2)
        CHECK(s(0, 0) == 1.0);
        CHECK(std::abs(s(0, 2) - 1.0) < slack);
        CHECK(std::abs(s(0, 4) - 0.5) < slack);
        CHECK(std::abs(s(0, 1)) < slack);
        CHECK(std::abs(s(0, 3)) < slack);
        CHECK(std::abs(s(0, 5)) < slack);
        // x2 row -> (1 on x2, 1 on p3, -1/2 on p1)
        CHECK(s(1, 1) == 1.0);
        CHECK(std::abs(s(1, 5) - 1.0) < slack);
        CHECK(std::abs(s(1, 3) + 0.5) < slack);
        CHECK(std::abs(s(1, 0)) < slack);
        CHECK(std::abs(s(1, 2)) < slack);
        CHECK(std::abs(s(1, 4)) < slack);
    }
}

TEST_CASE("exact x1 variance carries the (a - 3 m1)/(6 m1 m3 kappa) cross coefficient") {
    Rng rng(204);
    for (int i = 0; i < 30; ++i) {
        const HamiltonianParams h = random_hamiltonian(rng, 0.5, 20.0);
        const Mat6 s = symplectic_map(h, 1.0 / h.kappa).matrix;
        // Coefficient of the symmetrized (x1, p1) covariance in Var(x1(T))
        // is 2 S(0,0) S(0,3).
        const double coeff = 2.0 * s(0, 0) * s(0, 3);
        const double a = h.m1 + 12.0 * h.m3;
        const double expected = (a - 3.0 * h.m1) / (6.0 * h.m1 * h.m3 * h.kappa);
        CHECK(coeff == Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("propagate_moments: identity map leaves the state unchanged") {
    Rng rng(205);
    const PhaseSpaceMoments st = assemble_initial_state(random_probe(rng), random_system(rng));
    const PhaseSpaceMoments out = propagate_moments(st, SymplecticMap{});
    CHECK((out.cov - st.cov).cwiseAbs().maxCoeff() == 0.0);
    CHECK((out.mean - st.mean).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("propagate_moments: minimal state reaches 9/8 at the measurement time") {
    const PhaseSpaceMoments st =
        assemble_initial_state(GaussianProbeParams{}, GaussianSystemParams{});
    const double kappa = 1e4;
    const PhaseSpaceMoments out = propagate_moments(st, symplectic_map({1, 1, 1, kappa}, 1 / kappa));
    CHECK(out.cov(0, 0) == Approx(9.0 / 8.0).margin(1e-3));
    CHECK(out.cov(1, 1) == Approx(9.0 / 8.0).margin(1e-3));
    // the exact remainder is O(1/kappa^2): 17/(36 kappa^2) for each meter
    CHECK(out.cov(0, 0) == Approx(9.0 / 8.0 + 17.0 / 36.0 / (kappa * kappa)).epsilon(1e-10));
}

TEST_CASE("propagate_moments: optimized product state saturates the bound") {
    GaussianProbeParams p;
    p.A = 2.0;
    p.B = 2.0;  // dx^2 = 1/4, dp^2 = 1
    const PhaseSpaceMoments st = assemble_initial_state(p, GaussianSystemParams{});
    const double kappa = 1e4;
    const PhaseSpaceMoments out = propagate_moments(st, symplectic_map({1, 1, 1, kappa}, 1 / kappa));
    CHECK(out.cov(0, 0) * out.cov(1, 1) == Approx(1.0).margin(1e-6));
}

TEST_CASE("propagate_moments preserves physicality, volume and conserved momenta") {
    Rng rng(206);
    for (int i = 0; i < 60; ++i) {
        const PhaseSpaceMoments st = assemble_initial_state(random_probe(rng), random_system(rng));
        const HamiltonianParams h = random_hamiltonian(rng);
        const double t = rng.uniform(0.0, 2.0);
        const PhaseSpaceMoments out = propagate_moments(st, symplectic_map(h, t));
        CHECK(out.min_symplectic_eigenvalue() >= -kPhysicalityTol);
        CHECK(out.cov.determinant() == Approx(st.cov.determinant()).epsilon(1e-9));
        for (int mode = 0; mode < 3; ++mode)
            CHECK(out.heisenberg_product(mode) >= 0.5 - 1e-9);
        // p1, p2 rows of the generator vanish: their moments are conserved
        CHECK(out.cov(3, 3) == Approx(st.cov(3, 3)).epsilon(1e-13));
        CHECK(out.cov(4, 4) == Approx(st.cov(4, 4)).epsilon(1e-13));
        CHECK(out.mean(3) == Approx(st.mean(3)).margin(1e-13));
        CHECK(out.mean(4) == Approx(st.mean(4)).margin(1e-13));
    }
}

TEST_CASE("asymptotic_map: separable minimal state gives 9/8 exactly") {
    const PhaseSpaceMoments st =
        assemble_initial_state(GaussianProbeParams{}, GaussianSystemParams{});
    const AsymptoticMoments a = asymptotic_map(st);
    CHECK(a.var_x1 == 9.0 / 8.0);
    CHECK(a.var_x2 == 9.0 / 8.0);
    CHECK(a.mean_x1 == 0.0);
    CHECK(a.mean_x2 == 0.0);
}

TEST_CASE("asymptotic_map: linear in alpha") {
    PhaseSpaceMoments st = assemble_initial_state(GaussianProbeParams{}, GaussianSystemParams{});
    const double base = asymptotic_map(st).var_x1;
    st.cov(0, 4) = st.cov(4, 0) = 0.3;  // inject alpha
    CHECK(asymptotic_map(st).var_x1 == Approx(base + 0.3).margin(1e-15));
}

TEST_CASE("asymptotic_map: wide probe saturates unit variances") {
    GaussianProbeParams p;
    p.A = 2.0;
    p.B = 2.0;
    const AsymptoticMoments a =
        asymptotic_map(assemble_initial_state(p, GaussianSystemParams{}));
    CHECK(a.var_x1 == Approx(1.0).margin(1e-15));
    CHECK(a.var_x2 == Approx(1.0).margin(1e-15));
}

TEST_CASE("asymptotic_map: mean propagation") {
    GaussianProbeParams p;
    p.D1 = {0.7, -0.4};
    p.D2 = {-0.2, 1.1};
    GaussianSystemParams s;
    s.D3 = {0.5, 0.3};
    const PhaseSpaceMoments st = assemble_initial_state(p, s);
    const AsymptoticMoments a = asymptotic_map(st);
    CHECK(a.mean_x1 == Approx(st.mean(0) + st.mean(2) + 0.5 * st.mean(4)).margin(1e-14));
    CHECK(a.mean_x2 == Approx(st.mean(1) + st.mean(5) - 0.5 * st.mean(3)).margin(1e-14));
}

TEST_CASE("asymptotic_map: unphysical input raises the degenerate-state error") {
    PhaseSpaceMoments st = assemble_initial_state(GaussianProbeParams{}, GaussianSystemParams{});
    st.cov(0, 4) = st.cov(4, 0) = -2.0;  // impossible alpha, drives var negative
    CHECK_THROWS_AS(asymptotic_map(st), DegenerateState);
}

TEST_CASE("convergence_check: precondition violations") {
    const PhaseSpaceMoments st =
        assemble_initial_state(GaussianProbeParams{}, GaussianSystemParams{});
    const HamiltonianParams h{1, 1, 1, 1};
    CHECK_THROWS_AS(convergence_check(st, h, {1e3, 1e3}), InvalidParameters);
    CHECK_THROWS_AS(convergence_check(st, h, {1e3}), InvalidParameters);
    CHECK_THROWS_AS(convergence_check(st, h, {1e3, 1e2}), InvalidParameters);
    CHECK_THROWS_AS(convergence_check(st, h, {-1.0, 1e2}), InvalidParameters);
}

TEST_CASE("convergence_check: minimal state super-converges at second order") {
    // No x-p cross moments: the O(1/kappa) remainder vanishes identically
    // and the error is 17/(36 kappa^2) per meter; the ratio between
    // kappa = 1e2 and 1e3 is 100, not the first-order 10.
    const PhaseSpaceMoments st =
        assemble_initial_state(GaussianProbeParams{}, GaussianSystemParams{});
    const ConvergenceReport r = convergence_check(st, {1, 1, 1, 1}, {1e2, 1e3});
    CHECK(r.entries[0].abs_error[0] == Approx(17.0 / 36.0 * 1e-4).epsilon(1e-9));
    CHECK(r.pairs[0].ratio[0] == Approx(100.0).epsilon(1e-6));
    CHECK(r.pairs[0].super_convergent[0]);
    CHECK(r.pairs[0].below_floor[2]);  // means are exact for this state
    CHECK(r.pairs[0].below_floor[3]);
}

TEST_CASE("convergence_check: purely imaginary C also super-converges") {
    GaussianProbeParams p;
    p.C = {0.0, 1.0};
    const PhaseSpaceMoments st = assemble_initial_state(p, GaussianSystemParams{});
    const ConvergenceReport r = convergence_check(st, {1, 1, 1, 1}, {1e2, 1e3});
    CHECK(r.pairs[0].ratio[0] > 50.0);
    CHECK(r.pairs[0].ratio[0] < 200.0);
}

TEST_CASE("convergence_check: first-order decay for generic complex parameters") {
    GaussianProbeParams sep;
    sep.A = {2.0, 1.0};
    sep.B = {1.5, 0.5};
    sep.D1 = {0.3, 0.4};
    sep.D2 = {-0.2, 0.1};
    GaussianSystemParams sys;
    sys.A3 = {1.0, 0.8};
    sys.D3 = {0.2, 0.5};

    GaussianProbeParams ent = sep;
    ent.B = {1.5, 0.3};
    ent.C = {0.5, 0.7};

    for (const GaussianProbeParams& p : {sep, ent}) {
        const PhaseSpaceMoments st = assemble_initial_state(p, sys);
        const ConvergenceReport r = convergence_check(st, {1, 1, 1, 1}, {1e2, 1e3});
        for (int c = 0; c < 4; ++c) {
            CHECK_FALSE(r.pairs[0].below_floor[c]);
            CHECK(r.pairs[0].ratio[c] > 5.0);
            CHECK(r.pairs[0].ratio[c] < 20.0);
        }
    }
}
