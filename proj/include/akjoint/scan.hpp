#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "akjoint/errors.hpp"
#include "akjoint/inequality.hpp"

namespace akjoint {

/// Parameter plane of the violation scan: A_R and C_I vary, B_R and C_R
/// are held fixed.
struct ScanGrid {
    double b_r = 1.0;
    double c_r = 1.0;
    double ar_min = 1.05, ar_max = 10.0;
    int ar_steps = 200;
    double ci_min = -10.0, ci_max = 10.0;
    int ci_steps = 200;

    void validate() const {
        if (ar_steps < 2 || ci_steps < 2)
            throw InvalidParameters("scan needs at least 2 steps per axis");
        if (!(b_r > 0.0)) throw InvalidParameters("B_R must be positive");
        if (!std::isfinite(ar_min) || !std::isfinite(ar_max) || !std::isfinite(ci_min) ||
            !std::isfinite(ci_max) || !std::isfinite(b_r) || !std::isfinite(c_r))
            throw InvalidParameters("scan ranges must be finite");
        if (!(ar_max > ar_min) || !(ci_max > ci_min))
            throw InvalidParameters("scan ranges must be increasing");
    }

    double ar_value(int i) const {
        return ar_min + (ar_max - ar_min) * static_cast<double>(i) / (ar_steps - 1);
    }
    double ci_value(int j) const {
        return ci_min + (ci_max - ci_min) * static_cast<double>(j) / (ci_steps - 1);
    }
};

/// Γ_C = Γ within this slack (relative) marks a boundary point.
inline constexpr double kBoundaryTol = 1e-12;

struct ScanRow {
    double a_r, c_i;
    bool valid;
    double gamma, gamma_c;  // NaN where invalid
    bool violates_generalized, violates_original, boundary;
};

struct ScanSummary {
    long n_points = 0, n_valid = 0;
    long n_violations_generalized = 0, n_violations_original = 0, n_boundary = 0;
    double min_gamma_c = std::numeric_limits<double>::quiet_NaN();
    // Sign statistics of the cross correlations over valid points.
    long n_alpha_negative = 0, n_beta_negative = 0;
};

struct ScanResult {
    ScanGrid grid;
    std::vector<ScanRow> rows;  // A_R outer, C_I inner
    ScanSummary summary;
};

namespace detail {

inline ScanRow scan_point(const ScanGrid& g, int i, int j) {
    ScanRow row;
    row.a_r = g.ar_value(i);
    row.c_i = g.ci_value(j);
    row.valid = row.a_r > 0.0 && row.a_r * g.b_r - g.c_r * g.c_r > 0.0;
    if (!row.valid) {
        row.gamma = row.gamma_c = std::numeric_limits<double>::quiet_NaN();
        row.violates_generalized = row.violates_original = row.boundary = false;
        return row;
    }
    row.gamma = gamma_bound_constrained(row.a_r, g.b_r, g.c_r, row.c_i);
    row.gamma_c = gamma_c(row.a_r, g.b_r, g.c_r, row.c_i);
    row.violates_generalized = row.gamma_c <= row.gamma;
    row.violates_original = row.gamma_c < 1.0;
    row.boundary = std::abs(row.gamma_c - row.gamma) <=
                   kBoundaryTol * std::max({1.0, std::abs(row.gamma), std::abs(row.gamma_c)});
    return row;
}

} // namespace detail

/// Evaluates the grid; rows are produced in deterministic (A_R outer,
/// C_I inner) order regardless of the number of worker threads.
inline ScanResult violation_scan(const ScanGrid& grid, int n_threads = 1) {
    grid.validate();
    if (n_threads < 1) throw InvalidParameters("thread count must be >= 1");

    ScanResult result;
    result.grid = grid;
    const long total = static_cast<long>(grid.ar_steps) * grid.ci_steps;
    result.rows.resize(total);

    auto worker = [&](long begin, long end) {
        for (long idx = begin; idx < end; ++idx) {
            const int i = static_cast<int>(idx / grid.ci_steps);
            const int j = static_cast<int>(idx % grid.ci_steps);
            result.rows[idx] = detail::scan_point(grid, i, j);
        }
    };
    if (n_threads == 1) {
        worker(0, total);
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < n_threads; ++k) {
            const long begin = total * k / n_threads;
            const long end = total * (k + 1) / n_threads;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    ScanSummary& s = result.summary;
    s.n_points = total;
    for (const ScanRow& row : result.rows) {
        if (!row.valid) continue;
        ++s.n_valid;
        if (row.violates_generalized) ++s.n_violations_generalized;
        if (row.violates_original) ++s.n_violations_original;
        if (row.boundary) ++s.n_boundary;
        if (std::isnan(s.min_gamma_c) || row.gamma_c < s.min_gamma_c)
            s.min_gamma_c = row.gamma_c;
        // For the constrained probe, alpha = C_I/(2 A_R), beta = C_I/(2 B_R).
        if (row.c_i / (2.0 * row.a_r) < 0.0) ++s.n_alpha_negative;
        if (row.c_i / (2.0 * grid.b_r) < 0.0) ++s.n_beta_negative;
    }
    return result;
}

namespace detail {

/// 12 significant digits, C locale, "nan" for missing values.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail

inline void write_scan_csv(std::ostream& os, const ScanResult& result) {
    os << "a_r,c_i,valid,gamma,gamma_c,violates_generalized,violates_original,boundary\n";
    for (const ScanRow& r : result.rows) {
        os << detail::format_double(r.a_r) << ',' << detail::format_double(r.c_i) << ','
           << (r.valid ? 1 : 0) << ',' << detail::format_double(r.gamma) << ','
           << detail::format_double(r.gamma_c) << ',' << (r.violates_generalized ? 1 : 0) << ','
           << (r.violates_original ? 1 : 0) << ',' << (r.boundary ? 1 : 0) << '\n';
    }
}

} // namespace akjoint
