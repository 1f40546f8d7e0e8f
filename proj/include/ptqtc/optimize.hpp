// Copyright 2026 The ptqtc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/**
 * @file optimize.hpp
 * Maximisation of K3 over the measurement interval T for a fixed scenario,
 * sweeps over Gamma/J, and the jump of the optimum across the EP.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <future>
#include <numbers>
#include <span>
#include <vector>

#include "correlations.hpp"
#include "errors.hpp"
#include "golden_section.hpp"
#include "pt_dynamics.hpp"

namespace ptqtc {

struct TimeRange {
    double lo = 0.0;
    double hi = std::numbers::pi / 4.0;
};

struct SearchConfig {
    /// Scaled-time range used in PTS and at the EP.
    TimeRange pts_range{0.0, std::numbers::pi / 4.0};
    /// Upper bound on omega t in PTB; the lower bound is 0.
    double ptb_upper = 10.0;
    double tol = 1e-10;
    std::size_t grid_points = 2000;
    bool include_ep = false;
    unsigned workers = 1;

    [[nodiscard]] TimeRange range_for(Regime r) const {
        return r == Regime::PTB ? TimeRange{0.0, ptb_upper} : pts_range;
    }
};

struct SweepPoint {
    double gamma_over_j = 0.0;
    Regime regime = Regime::PTS;
    double t_star = 0.0;
    double k3_max = 0.0;
};

/// Dense scan of K3 over [lo, hi] followed by golden-section refinement in
/// the two cells around the best grid point. Ties go to the smaller T.
inline Extremum max_k3_over_T(const PtParams &p, const MeasurementScenario &sc,
                              TimeRange range, double tol,
                              std::size_t grid_points = 2000) {
    if (!std::isfinite(range.lo) || !std::isfinite(range.hi) || range.lo < 0.0 ||
        range.lo > range.hi) {
        throw ParameterError("max_k3_over_T: invalid time range");
    }
    if (!(tol > 0.0)) {
        throw ParameterError("max_k3_over_T: tol must be positive");
    }
    const auto k3 = [&](double T) { return correlators(T, p, sc).k3; };
    if (range.lo == range.hi) {
        return {range.lo, k3(range.lo)};
    }
    const std::size_t n = std::max<std::size_t>(grid_points, 3);
    const double step = (range.hi - range.lo) / static_cast<double>(n - 1);
    const auto node = [&](std::size_t i) {
        return i + 1 == n ? range.hi : range.lo + step * static_cast<double>(i);
    };

    std::size_t best = 0;
    double best_value = k3(node(0));
    for (std::size_t i = 1; i < n; ++i) {
        const double v = k3(node(i));
        if (v > best_value) {
            best = i;
            best_value = v;
        }
    }
    const double a = node(best == 0 ? 0 : best - 1);
    const double b = node(std::min(best + 1, n - 1));
    const Extremum refined = golden_section_maximize(k3, a, b, tol);
    if (refined.value > best_value) {
        return refined;
    }
    return {node(best), best_value};
}

inline SweepPoint sweep_point(double gamma_over_j, const MeasurementScenario &sc,
                              const SearchConfig &cfg) {
    if (!(gamma_over_j >= 0.0) || !std::isfinite(gamma_over_j)) {
        throw ParameterError("sweep_gamma: Gamma/J must be finite and >= 0");
    }
    const PtParams p = PtParams::from_ratio(gamma_over_j);
    if (p.regime() == Regime::EP && !cfg.include_ep) {
        throw ParameterError("sweep_gamma: grid point inside the EP window; "
                             "enable include_ep to evaluate it");
    }
    const Extremum e =
        max_k3_over_T(p, sc, cfg.range_for(p.regime()), cfg.tol, cfg.grid_points);
    return {gamma_over_j, p.regime(), e.x, e.value};
}

/// Results are ordered by grid index whatever the worker count.
inline std::vector<SweepPoint> sweep_gamma(std::span<const double> grid,
                                           const MeasurementScenario &sc,
                                           const SearchConfig &cfg = {}) {
    std::vector<SweepPoint> out(grid.size());
    const std::size_t workers = std::max(1u, cfg.workers);
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out[i] = sweep_point(grid[i], sc, cfg);
        }
        return out;
    }
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < grid.size(); i += workers) {
                out[i] = sweep_point(grid[i], sc, cfg);
            }
        }));
    }
    for (auto &j : jobs) {
        j.get();
    }
    return out;
}

/// Extrapolates f(h_0), f(h_0/r), f(h_0/r^2), ... to h -> 0 assuming
/// f(h) = L + a1 h + a2 h^2 + ...
inline double richardson_limit(std::span<const double> values, double ratio = 10.0) {
    if (values.empty()) {
        throw ParameterError("richardson_limit: no values");
    }
    std::vector<double> t(values.begin(), values.end());
    double factor = ratio;
    for (std::size_t level = 1; level < t.size(); ++level) {
        for (std::size_t k = 0; k + level < t.size(); ++k) {
            t[k] = (factor * t[k + 1] - t[k]) / (factor - 1.0);
        }
        factor *= ratio;
    }
    return t.front();
}

struct EpDiscontinuity {
    std::array<double, 3> eps{};
    std::array<double, 3> left_values{};  ///< k3_max at 1 - eps_k
    std::array<double, 3> right_values{}; ///< k3_max at 1 + eps_k
    double left_limit = 0.0;
    double right_value = 0.0;
    double jump = 0.0;
};

/// k3_max on both sides of the EP at eps, eps/10 and eps/100, each side
/// extrapolated to the EP. jump = right_value - left_limit.
inline EpDiscontinuity ep_discontinuity(const MeasurementScenario &sc, double eps,
                                        const SearchConfig &cfg = {}) {
    if (!(eps > 0.0 && eps <= 0.1)) {
        throw ParameterError("ep_discontinuity: eps must lie in (0, 0.1]");
    }
    EpDiscontinuity out;
    std::vector<double> grid;
    for (std::size_t k = 0; k < 3; ++k) {
        out.eps[k] = eps * std::pow(10.0, -static_cast<double>(k));
        grid.push_back(1.0 - out.eps[k]);
        grid.push_back(1.0 + out.eps[k]);
    }
    const std::vector<SweepPoint> pts = sweep_gamma(grid, sc, cfg);
    for (std::size_t k = 0; k < 3; ++k) {
        out.left_values[k] = pts[2 * k].k3_max;
        out.right_values[k] = pts[2 * k + 1].k3_max;
    }
    out.left_limit = richardson_limit(out.left_values);
    out.right_value = richardson_limit(out.right_values);
    out.jump = out.right_value - out.left_limit;
    return out;
}

} // namespace ptqtc
