// Command-line front end: violation scans, moment propagation, bound
// evaluation, and kernel self-checks, with CSV/JSON output for plotting
// and regression fixtures.
//
// Exit codes: 0 success, 1 check failure, 2 usage/parameter error,
// 3 I/O failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "akjoint/dynamics.hpp"
#include "akjoint/gaussian.hpp"
#include "akjoint/inequality.hpp"
#include "akjoint/propagator.hpp"
#include "akjoint/scan.hpp"

using nlohmann::json;
using namespace akjoint;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

/// Streams the payload to --out (or stdout) and maps stream failure to
/// exit code 3.
template <class Fn>
int with_output(const std::string& path, Fn&& write) {
    if (path.empty()) {
        write(std::cout);
        std::cout.flush();
        return std::cout ? kExitOk : kExitIo;
    }
    std::ofstream ofs(path, std::ios::binary);
    if (!ofs) {
        std::cerr << "error: cannot open output file '" << path << "'\n";
        return kExitIo;
    }
    write(ofs);
    ofs.flush();
    if (!ofs) {
        std::cerr << "error: write to '" << path << "' failed\n";
        return kExitIo;
    }
    return kExitOk;
}

json moments_to_json(const PhaseSpaceMoments& st) {
    json cov = json::array();
    for (int i = 0; i < 6; ++i) {
        json row = json::array();
        for (int j = 0; j < 6; ++j) row.push_back(st.cov(i, j));
        cov.push_back(row);
    }
    json mean = json::array();
    for (int i = 0; i < 6; ++i) mean.push_back(st.mean(i));
    return json{{"mean", mean}, {"cov", cov}};
}

struct ProbeFlags {
    double a_re = 1.0, a_im = 0.0;
    double b_re = 1.0, b_im = 0.0;
    double c_re = 0.0, c_im = 0.0;
    double d1_re = 0.0, d1_im = 0.0;
    double d2_re = 0.0, d2_im = 0.0;
    double a3_re = 1.0, a3_im = 0.0;
    double d3_re = 0.0, d3_im = 0.0;

    GaussianProbeParams probe() const {
        GaussianProbeParams p;
        p.A = {a_re, a_im};
        p.B = {b_re, b_im};
        p.C = {c_re, c_im};
        p.D1 = {d1_re, d1_im};
        p.D2 = {d2_re, d2_im};
        return p;
    }
    GaussianSystemParams system() const {
        GaussianSystemParams s;
        s.A3 = {a3_re, a3_im};
        s.D3 = {d3_re, d3_im};
        return s;
    }
};

void add_probe_flags(CLI::App* cmd, ProbeFlags& f) {
    cmd->add_option("--a-re", f.a_re, "Re(A) of the probe");
    cmd->add_option("--a-im", f.a_im, "Im(A)");
    cmd->add_option("--b-re", f.b_re, "Re(B)");
    cmd->add_option("--b-im", f.b_im, "Im(B)");
    cmd->add_option("--c-re", f.c_re, "Re(C)");
    cmd->add_option("--c-im", f.c_im, "Im(C)");
    cmd->add_option("--d1-re", f.d1_re, "Re(D1)");
    cmd->add_option("--d1-im", f.d1_im, "Im(D1)");
    cmd->add_option("--d2-re", f.d2_re, "Re(D2)");
    cmd->add_option("--d2-im", f.d2_im, "Im(D2)");
    cmd->add_option("--a3-re", f.a3_re, "Re(A3) of the system");
    cmd->add_option("--a3-im", f.a3_im, "Im(A3)");
    cmd->add_option("--d3-re", f.d3_re, "Re(D3)");
    cmd->add_option("--d3-im", f.d3_im, "Im(D3)");
}

// ---------------------------------------------------------------- scan

struct ScanConfig {
    ScanGrid grid;
    int threads = std::max(1u, std::thread::hardware_concurrency());
    std::string format = "csv";
    std::string out;
};

int run_scan(const ScanConfig& cfg) {
    const ScanResult result = violation_scan(cfg.grid, cfg.threads);

    int rc;
    if (cfg.format == "csv") {
        rc = with_output(cfg.out, [&](std::ostream& os) { write_scan_csv(os, result); });
    } else {
        json rows = json::array();
        for (const ScanRow& r : result.rows) {
            rows.push_back(json::array({r.a_r, r.c_i, r.valid ? 1 : 0,
                                        r.gamma, r.gamma_c,
                                        r.violates_generalized ? 1 : 0,
                                        r.violates_original ? 1 : 0, r.boundary ? 1 : 0}));
        }
        const json doc{
            {"grid",
             {{"b_r", cfg.grid.b_r},
              {"c_r", cfg.grid.c_r},
              {"ar_min", cfg.grid.ar_min},
              {"ar_max", cfg.grid.ar_max},
              {"ar_steps", cfg.grid.ar_steps},
              {"ci_min", cfg.grid.ci_min},
              {"ci_max", cfg.grid.ci_max},
              {"ci_steps", cfg.grid.ci_steps}}},
            {"columns",
             {"a_r", "c_i", "valid", "gamma", "gamma_c", "violates_generalized",
              "violates_original", "boundary"}},
            {"rows", rows},
            {"summary",
             {{"n_points", result.summary.n_points},
              {"n_valid", result.summary.n_valid},
              {"n_violations_generalized", result.summary.n_violations_generalized},
              {"n_violations_original", result.summary.n_violations_original},
              {"n_boundary", result.summary.n_boundary},
              {"min_gamma_c", result.summary.min_gamma_c},
              {"n_alpha_negative", result.summary.n_alpha_negative},
              {"n_beta_negative", result.summary.n_beta_negative}}}};
        rc = with_output(cfg.out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    }
    if (rc != kExitOk) return rc;

    char line[256];
    std::snprintf(line, sizeof line,
                  "scan: valid=%ld violations=%ld violations_original=%ld min_gamma_c=%.12g "
                  "alpha_negative=%ld beta_negative=%ld",
                  result.summary.n_valid, result.summary.n_violations_generalized,
                  result.summary.n_violations_original, result.summary.min_gamma_c,
                  result.summary.n_alpha_negative, result.summary.n_beta_negative);
    // Keep a stdout table uncontaminated: summary goes to stderr then.
    (cfg.out.empty() ? std::cerr : std::cout) << line << '\n';
    return kExitOk;
}

// ----------------------------------------------------------- propagate

struct PropagateConfig {
    ProbeFlags pf;
    HamiltonianParams h{1.0, 1.0, 1.0, 1e4};
    std::string mode = "both";
    std::optional<double> time;
    std::string out;
};

int run_propagate(const PropagateConfig& cfg) {
    const GaussianProbeParams probe = cfg.pf.probe();
    const GaussianSystemParams system = cfg.pf.system();
    const PhaseSpaceMoments initial = assemble_initial_state(probe, system);
    const ProbeMomentSummary pm = probe_moments(probe);

    const bool want_exact = cfg.mode == "exact" || cfg.mode == "both";
    const bool want_asym = cfg.mode == "asymptotic" || cfg.mode == "both";
    if (want_asym && !(cfg.h.kappa > 0.0))
        throw InvalidParameters("asymptotic map is undefined at kappa = 0");

    double t = 0.0;
    if (want_exact) {
        if (cfg.time)
            t = *cfg.time;
        else if (cfg.h.kappa > 0.0)
            t = 1.0 / cfg.h.kappa;
        else
            throw InvalidParameters("exact mode at kappa = 0 needs an explicit --time");
        if (!(t >= 0.0)) throw InvalidParameters("--time must be nonnegative");
    }

    json doc{{"hamiltonian",
              {{"m1", cfg.h.m1}, {"m2", cfg.h.m2}, {"m3", cfg.h.m3}, {"kappa", cfg.h.kappa}}},
             {"mode", cfg.mode},
             {"initial", moments_to_json(initial)},
             {"alpha", pm.alpha},
             {"beta", pm.beta}};

    PhaseSpaceMoments exact;
    if (want_exact) {
        exact = propagate_moments(initial, symplectic_map(cfg.h, t));
        doc["time"] = t;
        doc["exact"] = moments_to_json(exact);
        doc["exact"]["var_x1"] = exact.cov(0, 0);
        doc["exact"]["var_x2"] = exact.cov(1, 1);
    }
    AsymptoticMoments asym{};
    if (want_asym) {
        asym = asymptotic_map(initial);
        doc["asymptotic"] = {{"var_x1", asym.var_x1},
                             {"var_x2", asym.var_x2},
                             {"mean_x1", asym.mean_x1},
                             {"mean_x2", asym.mean_x2}};
    }
    if (want_exact && want_asym) {
        doc["deltas"] = {{"var_x1", std::abs(exact.cov(0, 0) - asym.var_x1)},
                         {"var_x2", std::abs(exact.cov(1, 1) - asym.var_x2)},
                         {"mean_x1", std::abs(exact.mean(0) - asym.mean_x1)},
                         {"mean_x2", std::abs(exact.mean(1) - asym.mean_x2)}};
    }
    return with_output(cfg.out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

// --------------------------------------------------------------- bound

struct BoundConfig {
    ProbeFlags pf;
    std::optional<double> k1, k2, k3;
    std::string out;
};

int run_bound(const BoundConfig& cfg) {
    double k1, k2, k3;
    json source;
    if (cfg.k1 || cfg.k2 || cfg.k3) {
        if (!(cfg.k1 && cfg.k2 && cfg.k3))
            throw InvalidParameters("--k1, --k2, --k3 must be given together");
        k1 = *cfg.k1;
        k2 = *cfg.k2;
        k3 = *cfg.k3;
        source = "flags";
    } else {
        const ProbeMomentSummary pm = probe_moments(cfg.pf.probe());
        const SystemMomentSummary sm = system_moments(cfg.pf.system());
        k1 = pm.dx1sq * pm.dp1sq;
        k2 = pm.dx2sq * pm.dp2sq;
        k3 = sm.dx3sq * sm.dp3sq;
        source = "moments";
    }
    const double gamma = gamma_bound(k1, k2, k3);
    const MinimizedProduct mp = minimized_product(k1, k2, k3);
    const json doc{{"source", source},     {"k1", k1},
                   {"k2", k2},             {"k3", k3},
                   {"gamma", gamma},       {"x_opt", mp.x_opt},
                   {"y_opt", mp.y_opt},    {"product_min", mp.product_min}};
    return with_output(cfg.out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

// -------------------------------------------------------- kernel-check

struct KernelCheckConfig {
    HamiltonianParams h{1.0, 1.0, 1.0, 2.0};
    double t = 1.0;
    double t1 = 0.3;
    unsigned long seed = 12345;
    int trials = 100;
    std::string out;
};

struct CheckLine {
    bool pass;
    std::string text;
};

int run_kernel_check(const KernelCheckConfig& cfg) {
    cfg.h.validate();
    if (std::abs(cfg.h.b()) < kSingularBTol)
        throw InvalidParameters("singular configuration: |m2 m3 kappa^2 - 1| < 1e-9");
    if (!(cfg.t > 0.0) || !(cfg.t1 > 0.0) || !(cfg.t1 < cfg.t))
        throw InvalidParameters("need 0 < t1 < t");
    if (cfg.trials < 1) throw InvalidParameters("trials must be >= 1");

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.3, 3.0);
    auto rand_vec = [&] { return Vec3{2.0 * unit(rng), 2.0 * unit(rng), 2.0 * unit(rng)}; };

    std::vector<CheckLine> lines;
    char buf[256];

    // Free limit: at kappa = 0 the action is the three-particle free action
    // and F(t) collapses to sqrt(i m1 m2 m3 / (8 pi^3 t^3)).
    {
        HamiltonianParams h0 = cfg.h;
        h0.kappa = 0.0;
        HamiltonianParams heps = cfg.h;
        heps.kappa = 1e-8;
        double worst_act = 0.0, worst_eps = 0.0;
        for (int i = 0; i < cfg.trials; ++i) {
            const Vec3 q = rand_vec(), Q = rand_vec();
            const double free_action = (h0.m1 * std::pow(Q(0) - q(0), 2) +
                                        h0.m2 * std::pow(Q(1) - q(1), 2) +
                                        h0.m3 * std::pow(Q(2) - q(2), 2)) /
                                       (2.0 * cfg.t);
            const double scale = std::max(1.0, std::abs(free_action));
            worst_act = std::max(worst_act,
                                 std::abs(classical_action(h0, {q, Q, cfg.t}) - free_action) / scale);
            worst_eps = std::max(worst_eps,
                                 std::abs(classical_action(heps, {q, Q, cfg.t}) - free_action) / scale);
        }
        const cplx f_free = std::sqrt(cplx(0.0, cfg.h.m1 * cfg.h.m2 * cfg.h.m3) /
                                      (8.0 * std::pow(M_PI, 3) * std::pow(cfg.t, 3)));
        const double pref_err = std::abs(prefactor(h0, cfg.t) - f_free) / std::abs(f_free);
        const bool pass = worst_act < 1e-12 && worst_eps < 1e-6 && pref_err < 1e-12;
        std::snprintf(buf, sizeof buf,
                      "free-limit            action err %.2e, kappa=1e-8 err %.2e, prefactor err %.2e",
                      worst_act, worst_eps, pref_err);
        lines.push_back({pass, buf});
    }

    // Kernel factorization at kappa = 0, up to a global branch sign.
    {
        HamiltonianParams h0 = cfg.h;
        h0.kappa = 0.0;
        double worst = 0.0;
        int flips = 0;
        for (int i = 0; i < cfg.trials; ++i) {
            const Vec3 q = rand_vec(), Q = rand_vec();
            const cplx k3m = kernel(h0, {q, Q, cfg.t}).kernel;
            cplx prod = 1.0;
            const double ms[3] = {h0.m1, h0.m2, h0.m3};
            for (int mode = 0; mode < 3; ++mode) {
                const double z = Q(mode) - q(mode);
                prod *= std::sqrt(ms[mode] / (cplx(0.0, 2.0 * M_PI * cfg.t))) *
                        std::exp(cplx(0.0, ms[mode] * z * z / (2.0 * cfg.t)));
            }
            const double same = std::abs(k3m - prod), flip = std::abs(k3m + prod);
            if (flip < same) ++flips;
            worst = std::max(worst, std::min(same, flip) / std::abs(prod));
        }
        std::snprintf(buf, sizeof buf,
                      "free-factorization    max rel err %.2e (sign flips %d/%d)", worst, flips,
                      cfg.trials);
        lines.push_back({worst < 1e-10, buf});
    }

    // Prefactor composition identity, up to sign.
    {
        const double t2 = cfg.t - cfg.t1;
        const double a1 = cfg.h.a(cfg.t1), a2 = cfg.h.a(t2), at = cfg.h.a(cfg.t);
        const cplx rhs = std::pow(M_PI, 1.5) * prefactor(cfg.h, cfg.t1) * prefactor(cfg.h, t2) *
                         std::sqrt(cplx(0.0, 2.0) * cfg.h.b() * std::pow(cfg.t1, 3) *
                                   std::pow(t2, 3) * a1 * a2 /
                                   (3.0 * cfg.h.m1 * cfg.h.m2 * cfg.h.m3 * cfg.h.m3 *
                                    std::pow(cfg.t, 3) * at));
        const cplx lhs = prefactor(cfg.h, cfg.t);
        const double same = std::abs(lhs - rhs), flip = std::abs(lhs + rhs);
        const double rel = std::min(same, flip) / std::abs(lhs);
        std::snprintf(buf, sizeof buf, "prefactor-composition rel err %.2e (sign %s)", rel,
                      flip < same ? "flipped" : "matched");
        lines.push_back({rel < 1e-10, buf});
    }

    // Kernel composition via the closed-form Gaussian integral, up to sign.
    {
        double worst = 0.0;
        int flips = 0;
        for (int i = 0; i < cfg.trials; ++i) {
            const Vec3 q = rand_vec(), Q = rand_vec();
            const cplx direct = kernel(cfg.h, {q, Q, cfg.t}).kernel;
            const cplx comp = compose_kernels(cfg.h, q, Q, cfg.t, cfg.t1);
            const double same = std::abs(comp - direct), flip = std::abs(comp + direct);
            if (flip < same) ++flips;
            worst = std::max(worst, std::min(same, flip) / std::abs(direct));
        }
        std::snprintf(buf, sizeof buf,
                      "kernel-composition    max rel err %.2e (sign flips %d/%d)", worst, flips,
                      cfg.trials);
        lines.push_back({worst < 1e-8, buf});
    }

    // Unit Jacobian of the large-kappa change of variables.
    {
        double worst_det = 0.0, worst_inv = 0.0;
        for (int i = 0; i < cfg.trials; ++i) {
            HamiltonianParams hr{pos(rng), pos(rng), pos(rng), 10.0 + 1e4 * (unit(rng) + 1.0)};
            worst_det = std::max(worst_det, std::abs(jacobian_unit_check(hr) - 1.0));
            const Mat3 prod = pointer_variable_map(hr) * pointer_variable_map_inverse(hr);
            worst_inv = std::max(worst_inv, (prod - Mat3::Identity()).cwiseAbs().maxCoeff());
        }
        std::snprintf(buf, sizeof buf,
                      "unit-jacobian         max |det|-1 %.2e, inverse defect %.2e", worst_det,
                      worst_inv);
        lines.push_back({worst_det < 1e-10 && worst_inv < 1e-10, buf});
    }

    // Kernel-evolved Gaussian moments against symplectic propagation.
    {
        double worst = 0.0;
        for (int i = 0; i < cfg.trials; ++i) {
            GaussianProbeParams probe;
            do {
                probe.A = {pos(rng), unit(rng)};
                probe.B = {pos(rng), unit(rng)};
                probe.C = {1.2 * unit(rng), unit(rng)};
            } while (probe.real_det() < 0.05);
            probe.D1 = {unit(rng), unit(rng)};
            probe.D2 = {unit(rng), unit(rng)};
            GaussianSystemParams system{{pos(rng), unit(rng)}, {unit(rng), unit(rng)}};
            const PhaseSpaceMoments via_kernel =
                kernel_evolve_gaussian(cfg.h, probe, system, cfg.t);
            const PhaseSpaceMoments via_map = propagate_moments(
                assemble_initial_state(probe, system), symplectic_map(cfg.h, cfg.t));
            const double scale = std::max(1.0, via_map.cov.cwiseAbs().maxCoeff());
            worst = std::max(worst,
                             std::max((via_kernel.cov - via_map.cov).cwiseAbs().maxCoeff(),
                                      (via_kernel.mean - via_map.mean).cwiseAbs().maxCoeff()) /
                                 scale);
        }
        std::snprintf(buf, sizeof buf, "kernel-vs-symplectic  max moment deviation %.2e", worst);
        lines.push_back({worst < 1e-8, buf});
    }

    int failures = 0;
    std::ostringstream report;
    report << "kernel-check: m1=" << cfg.h.m1 << " m2=" << cfg.h.m2 << " m3=" << cfg.h.m3
           << " kappa=" << cfg.h.kappa << " t=" << cfg.t << " t1=" << cfg.t1
           << " trials=" << cfg.trials << " seed=" << cfg.seed << '\n';
    for (const CheckLine& l : lines) {
        if (!l.pass) ++failures;
        report << (l.pass ? "PASS " : "FAIL ") << l.text << '\n';
    }
    report << "result: " << (failures == 0 ? "PASS" : "FAIL") << " ("
           << (lines.size() - failures) << '/' << lines.size() << " checks)\n";

    const int rc = with_output(cfg.out, [&](std::ostream& os) { os << report.str(); });
    if (rc != kExitOk) return rc;
    return failures == 0 ? kExitOk : kExitCheckFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arthurs-Kelly joint-measurement simulator"};
    app.require_subcommand(1);

    ScanConfig scan_cfg;
    CLI::App* scan = app.add_subcommand(
        "scan", "Scan the (A_R, C_I) plane for generalized-bound violations");
    scan->add_option("--br", scan_cfg.grid.b_r, "fixed B_R");
    scan->add_option("--cr", scan_cfg.grid.c_r, "fixed C_R");
    scan->add_option("--ar-min", scan_cfg.grid.ar_min, "A_R range start");
    scan->add_option("--ar-max", scan_cfg.grid.ar_max, "A_R range end");
    scan->add_option("--ar-steps", scan_cfg.grid.ar_steps, "A_R grid points");
    scan->add_option("--ci-min", scan_cfg.grid.ci_min, "C_I range start");
    scan->add_option("--ci-max", scan_cfg.grid.ci_max, "C_I range end");
    scan->add_option("--ci-steps", scan_cfg.grid.ci_steps, "C_I grid points");
    scan->add_option("--threads", scan_cfg.threads, "worker threads");
    scan->add_option("--format", scan_cfg.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    scan->add_option("--out", scan_cfg.out, "output file (default: stdout)");

    PropagateConfig prop_cfg;
    CLI::App* prop = app.add_subcommand(
        "propagate", "Propagate a Gaussian initial state to t = 1/kappa");
    add_probe_flags(prop, prop_cfg.pf);
    prop->add_option("--m1", prop_cfg.h.m1, "mass of meter 1");
    prop->add_option("--m2", prop_cfg.h.m2, "mass of meter 2");
    prop->add_option("--m3", prop_cfg.h.m3, "mass of the system");
    prop->add_option("--kappa", prop_cfg.h.kappa, "coupling");
    prop->add_option("--mode", prop_cfg.mode, "exact | asymptotic | both")
        ->check(CLI::IsMember({"exact", "asymptotic", "both"}));
    double prop_time = 0.0;
    CLI::Option* time_opt = prop->add_option("--time", prop_time, "override t for exact mode");
    prop->add_option("--out", prop_cfg.out, "output file (default: stdout)");

    BoundConfig bound_cfg;
    CLI::App* bound = app.add_subcommand(
        "bound", "Generalized bound and minimization from K_j or probe parameters");
    double k1v = 0.0, k2v = 0.0, k3v = 0.0;
    CLI::Option* k1o = bound->add_option("--k1", k1v, "uncertainty product mode 1");
    CLI::Option* k2o = bound->add_option("--k2", k2v, "uncertainty product mode 2");
    CLI::Option* k3o = bound->add_option("--k3", k3v, "uncertainty product mode 3");
    add_probe_flags(bound, bound_cfg.pf);
    bound->add_option("--out", bound_cfg.out, "output file (default: stdout)");

    KernelCheckConfig kc_cfg;
    CLI::App* kc = app.add_subcommand("kernel-check", "Kernel structural identities");
    kc->add_option("--m1", kc_cfg.h.m1, "mass of meter 1");
    kc->add_option("--m2", kc_cfg.h.m2, "mass of meter 2");
    kc->add_option("--m3", kc_cfg.h.m3, "mass of the system");
    kc->add_option("--kappa", kc_cfg.h.kappa, "coupling");
    kc->add_option("--t", kc_cfg.t, "total time");
    kc->add_option("--t1", kc_cfg.t1, "composition split time");
    kc->add_option("--seed", kc_cfg.seed, "random seed");
    kc->add_option("--trials", kc_cfg.trials, "randomized trials per check");
    kc->add_option("--out", kc_cfg.out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (scan->parsed()) return run_scan(scan_cfg);
        if (prop->parsed()) {
            if (*time_opt) prop_cfg.time = prop_time;
            return run_propagate(prop_cfg);
        }
        if (bound->parsed()) {
            if (*k1o) bound_cfg.k1 = k1v;
            if (*k2o) bound_cfg.k2 = k2v;
            if (*k3o) bound_cfg.k3 = k3v;
            return run_bound(bound_cfg);
        }
        if (kc->parsed()) return run_kernel_check(kc_cfg);
    } catch (const InvalidParameters& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SingularTime& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailure;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}
