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
 * @file cli.hpp
 * Command-line front end. `run` is the whole program minus process setup,
 * so tests can drive it with an argument vector and string streams.
 *
 * Exit codes: 0 success, 2 usage or parameter error, 3 numeric failure or a
 * failed self-check.
 */

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "correlations.hpp"
#include "dilation.hpp"
#include "errors.hpp"
#include "montecarlo.hpp"
#include "optimize.hpp"
#include "pt_dynamics.hpp"
#include "qstate.hpp"

namespace ptqtc::cli {

inline constexpr const char *schema_version = "1";

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Scalar results that are not part of the row set.
    std::vector<std::pair<std::string, Cell>> summary;
    /// Set when a self-check failed; the table is still written.
    bool checks_failed = false;
};

/// Parses "1.5", "pi", "-pi/6", "3*pi/4", "0.5pi", "2pi/3".
inline double parse_scalar(const std::string &text) {
    std::string s;
    for (const char c : text) {
        if (c != ' ') {
            s.push_back(c);
        }
    }
    const auto to_double = [&](const std::string &part) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception &) {
            throw ParameterError("cannot parse number '" + text + "'");
        }
        if (used != part.size()) {
            throw ParameterError("cannot parse number '" + text + "'");
        }
        return v;
    };
    const auto pos = s.find("pi");
    if (pos == std::string::npos) {
        return to_double(s);
    }
    std::string prefix = s.substr(0, pos);
    const std::string suffix = s.substr(pos + 2);
    if (!prefix.empty() && prefix.back() == '*') {
        prefix.pop_back();
    }
    double coeff = 1.0;
    if (prefix == "-") {
        coeff = -1.0;
    } else if (!prefix.empty() && prefix != "+") {
        coeff = to_double(prefix);
    }
    double value = coeff * std::numbers::pi;
    if (!suffix.empty()) {
        if (suffix.front() != '/') {
            throw ParameterError("cannot parse number '" + text + "'");
        }
        const double den = to_double(suffix.substr(1));
        if (den == 0.0) {
            throw ParameterError("division by zero in '" + text + "'");
        }
        value /= den;
    }
    return value;
}

/// "lo:hi:n" -> n equally spaced points including both ends.
inline std::vector<double> parse_grid(const std::string &text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (a == std::string::npos || b == std::string::npos) {
        throw ParameterError("grid must have the form lo:hi:n, got '" + text + "'");
    }
    const double lo = parse_scalar(text.substr(0, a));
    const double hi = parse_scalar(text.substr(a + 1, b - a - 1));
    const double n_real = parse_scalar(text.substr(b + 1));
    if (n_real < 0.0 || n_real != std::floor(n_real) || n_real > 1e8) {
        throw ParameterError("grid point count must be a non-negative integer");
    }
    const auto n = static_cast<std::size_t>(n_real);
    if (n == 0) {
        throw ParameterError("grid '" + text + "' is empty");
    }
    if (n > 1 && !(hi > lo)) {
        throw ParameterError("grid needs hi > lo");
    }
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = n == 1 ? lo
               : i + 1 == n
                   ? hi
                   : lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(n - 1);
    }
    return g;
}

struct Options {
    std::string command;
    double j = 1.0;
    std::string gamma = "0";
    std::string t = "pi/4";
    std::string tau = "pi/2";
    std::string grid;
    std::uint64_t shots = 10000;
    std::uint64_t seed = 0;
    std::string mode = "ideal";
    std::string format = "csv";
    std::string out;
    std::string quantity = "k3";
    int q_in = -1;
    std::string eps = "1e-2";
    double tol = 1e-10;
    std::size_t points = 2000;
    double ptb_upper = 10.0;
    bool wide = false;
    bool include_ep = false;
    bool bootstrap = false;
    std::string path = "direct";
    unsigned workers = 1;
};

namespace detail {

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string cell_text(const Cell &c) {
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_number(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return v;
            }
        },
        c);
}

inline nlohmann::json cell_json(const Cell &c) {
    return std::visit([](const auto &v) { return nlohmann::json(v); }, c);
}

inline void write_csv(const Table &t, std::ostream &os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? "," : "") << t.columns[i];
    }
    os << '\n';
    for (const auto &row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << cell_text(row[i]);
        }
        os << '\n';
    }
    for (const auto &[key, value] : t.summary) {
        os << "# " << key << '=' << cell_text(value) << '\n';
    }
}

inline void write_json(const Table &t, const Options &o, std::ostream &os) {
    nlohmann::json doc;
    doc["schema_version"] = schema_version;
    doc["command"] = o.command;
    doc["parameters"] = {
        {"j", o.j},           {"gamma", o.gamma},     {"t", o.t},
        {"tau", o.tau},       {"grid", o.grid},       {"shots", o.shots},
        {"seed", o.seed},     {"mode", o.mode},       {"quantity", o.quantity},
        {"q_in", o.q_in},     {"eps", o.eps},         {"tol", o.tol},
        {"points", o.points}, {"ptb_upper", o.ptb_upper}, {"wide", o.wide},
        {"include_ep", o.include_ep}, {"bootstrap", o.bootstrap},
        {"path", o.path}};
    doc["columns"] = t.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : t.rows) {
        nlohmann::json r = nlohmann::json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            r[t.columns[i]] = cell_json(row[i]);
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    nlohmann::json summary = nlohmann::json::object();
    for (const auto &[key, value] : t.summary) {
        summary[key] = cell_json(value);
    }
    doc["summary"] = std::move(summary);
    os << doc.dump(2) << '\n';
}

inline PtParams params_of(const Options &o) {
    return PtParams(o.j, parse_scalar(o.gamma));
}

inline std::vector<double> grid_or(const Options &o, const char *fallback) {
    return parse_grid(o.grid.empty() ? std::string(fallback) : o.grid);
}

inline MeasurementScenario scenario_of(const Options &o) {
    const EvolutionPath path =
        o.path == "dilation" ? EvolutionPath::Dilation : EvolutionPath::Direct;
    return MeasurementScenario().with_path(path);
}

inline SearchConfig search_of(const Options &o) {
    SearchConfig cfg;
    if (o.wide) {
        cfg.pts_range = {0.0, std::numbers::pi / 2.0};
    }
    cfg.ptb_upper = o.ptb_upper;
    cfg.tol = o.tol;
    cfg.grid_points = o.points;
    cfg.include_ep = o.include_ep;
    cfg.workers = o.workers;
    return cfg;
}

inline Table cmd_evolve(const Options &o) {
    const PtParams p = params_of(o);
    const auto grid = grid_or(o, "0:pi/2:51");
    const Trajectory tr = trajectory(PureState::minus_y(), p, grid);
    Table t;
    t.columns = {"tau",     "re_a1",   "im_a1",   "re_a2",   "im_a2",
                 "bloch_x", "bloch_y", "bloch_z", "distance"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto &a = tr.states[i].amp;
        const auto &b = tr.bloch[i];
        t.rows.push_back({tr.times[i], a(0).real(), a(0).imag(), a(1).real(),
                          a(1).imag(), b.x, b.y, b.z, tr.distance[i]});
    }
    return t;
}

inline Table cmd_distance(const Options &o) {
    const PtParams p = params_of(o);
    const auto grid = grid_or(o, "0:pi/2:51");
    const Trajectory tr = trajectory(PureState::minus_y(), p, grid);
    const std::vector<double> v = speed_profile(tr);
    Table t;
    t.columns = {"tau", "distance", "speed"};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        t.rows.push_back({tr.times[i], tr.distance[i], v[i]});
    }
    return t;
}

inline std::vector<Cell> correlator_row(const CorrelatorSet &c) {
    return {c.T, c.c12, c.c23, c.c13, c.k3};
}

inline Table cmd_correlators(const Options &o) {
    const PtParams p = params_of(o);
    Table t;
    t.columns = {"T", "C12", "C23", "C13", "K3"};
    t.rows.push_back(correlator_row(correlators(parse_scalar(o.t), p, scenario_of(o))));
    return t;
}

inline Table cmd_k3(const Options &o) {
    const PtParams p = params_of(o);
    const auto grid = grid_or(o, "0:pi/4:301");
    Table t;
    t.columns = {"T", "C12", "C23", "C13", "K3"};
    for (const auto &c : k3_curve(grid, p, scenario_of(o))) {
        t.rows.push_back(correlator_row(c));
    }
    return t;
}

inline Table cmd_k3max(const Options &o) {
    const auto grid = grid_or(o, "0:0.99:100");
    const MeasurementScenario sc = scenario_of(o);
    const SearchConfig cfg = search_of(o);
    Table t;
    t.columns = {"gamma_over_j", "regime", "t_star", "k3_max"};
    for (const auto &pt : sweep_gamma(grid, sc, cfg)) {
        t.rows.push_back({pt.gamma_over_j, std::string(to_string(pt.regime)),
                          pt.t_star, pt.k3_max});
    }
    // The dilation path is undefined past the EP; the jump uses direct evolution.
    const EpDiscontinuity ep = ep_discontinuity(
        sc.with_path(EvolutionPath::Direct), parse_scalar(o.eps), cfg);
    t.summary = {{"ep_eps", ep.eps[0]},
                 {"ep_left_limit", ep.left_limit},
                 {"ep_right_value", ep.right_value},
                 {"ep_jump", ep.jump}};
    return t;
}

inline Table cmd_witness(const Options &o) {
    Table t;
    t.columns = {"gamma_over_j", "p_with", "p_without", "W"};
    const EvolutionPath path =
        o.path == "dilation" ? EvolutionPath::Dilation : EvolutionPath::Direct;
    std::vector<PtParams> params;
    if (o.grid.empty()) {
        params.push_back(params_of(o));
    } else {
        for (const double g : parse_grid(o.grid)) {
            params.push_back(PtParams::from_ratio(g, o.j));
        }
    }
    for (const auto &p : params) {
        const WitnessResult w = quantum_witness(p, path);
        t.rows.push_back({p.gamma_over_j(), w.p_with, w.p_without, w.w});
    }
    return t;
}

inline Table cmd_montecarlo(const Options &o) {
    const PtParams p = params_of(o);
    ShotConfig cfg;
    cfg.shots = o.shots;
    cfg.seed = o.seed;
    cfg.mode = o.mode == "dilated" ? SamplingMode::Dilated : SamplingMode::Ideal;
    cfg.workers = o.workers;
    cfg.bootstrap = o.bootstrap;
    const MeasurementScenario sc;

    ShotRecord r;
    double time = 0.0;
    double exact = 0.0;
    if (o.quantity == "conditional") {
        time = parse_scalar(o.tau);
        r = sample_conditional(o.q_in, time, p, cfg, sc);
        exact = conditional_prob(1, o.q_in, time, p, sc);
    } else if (o.quantity == "witness") {
        time = witness_evolution_time;
        r = witness_sampled(p, cfg);
        exact = quantum_witness(p).w;
    } else {
        time = parse_scalar(o.t);
        r = k3_sampled(time, p, sc, cfg);
        exact = correlators(time, p, sc).k3;
    }
    Table t;
    t.columns = {"quantity", "gamma_over_j", "time",         "mode",
                 "shots",    "seed",         "accepted",     "attempted",
                 "success_rate", "estimate", "std_error",    "exact"};
    t.rows.push_back({o.quantity, p.gamma_over_j(), time, o.mode,
                      static_cast<std::int64_t>(o.shots), std::to_string(o.seed),
                      static_cast<std::int64_t>(r.accepted),
                      static_cast<std::int64_t>(r.attempted), r.success_rate,
                      r.estimate, r.std_error, exact});
    return t;
}

inline Table cmd_dilation_check(const Options &o) {
    const PtParams p = params_of(o);
    const ScaledTime tau{parse_scalar(o.tau)};
    const PureState psi0 = PureState::minus_y();

    const MetricOperator eta = metric_operator(p);
    const DilationUnitary u = dilation_unitary(p, tau);
    const PostSelected ps = pt_via_dilation(psi0, p, tau);
    const PureState direct = evolve_state(psi0, p, tau);

    const Vector2 up = propagator(p, tau) * psi0.amp;
    const double expected_success =
        up.squaredNorm() / (psi0.norm_squared() + (eta.m * psi0.amp).squaredNorm());

    Table t;
    t.columns = {"check", "value", "tolerance", "pass"};
    const auto add = [&](const std::string &name, double value, double limit) {
        const bool ok = std::abs(value) <= limit;
        t.checks_failed = t.checks_failed || !ok;
        t.rows.push_back({name, value, limit, ok});
    };
    add("unitarity_residual", unitarity_residual(u), 1e-12);
    add("intertwining_residual", intertwining_residual(eta, p), 1e-12);
    add("metric_hermiticity_residual", (eta.m - eta.m.adjoint()).cwiseAbs().maxCoeff(),
        1e-12);
    add("block_identity_residual", block_identity_residual(p, tau), 1e-12);
    add("fidelity_defect", 1.0 - fidelity(ps.state, direct), 1e-10);
    add("success_prob_residual", ps.success_prob - expected_success, 1e-12);
    const bool in_range = ps.success_prob > 0.0 && ps.success_prob <= 1.0;
    t.checks_failed = t.checks_failed || !in_range;
    t.rows.push_back({std::string("success_prob"), ps.success_prob, 1.0, in_range});
    t.summary = {{"gamma_over_j", p.gamma_over_j()},
                 {"tau", tau.value},
                 {"success_prob", ps.success_prob}};
    return t;
}

inline void validate(const Options &o) {
    if (o.mode != "ideal" && o.mode != "dilated") {
        throw ParameterError("--mode must be ideal or dilated");
    }
    if (o.format != "csv" && o.format != "json") {
        throw ParameterError("--format must be csv or json");
    }
    if (o.path != "direct" && o.path != "dilation") {
        throw ParameterError("--path must be direct or dilation");
    }
    if (o.quantity != "k3" && o.quantity != "witness" && o.quantity != "conditional") {
        throw ParameterError("--quantity must be k3, witness or conditional");
    }
    if (o.q_in != 1 && o.q_in != -1) {
        throw ParameterError("--q-in must be +1 or -1");
    }
}

inline Table dispatch(const Options &o) {
    validate(o);
    if (o.command == "evolve") return cmd_evolve(o);
    if (o.command == "distance") return cmd_distance(o);
    if (o.command == "correlators") return cmd_correlators(o);
    if (o.command == "k3") return cmd_k3(o);
    if (o.command == "k3max") return cmd_k3max(o);
    if (o.command == "witness") return cmd_witness(o);
    if (o.command == "montecarlo") return cmd_montecarlo(o);
    if (o.command == "dilation-check") return cmd_dilation_check(o);
    throw ParameterError("unknown command '" + o.command + "'");
}

inline std::string one_line(std::string s) {
    for (char &c : s) {
        if (c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    while (!s.empty() && s.back() == ' ') {
        s.pop_back();
    }
    return s;
}

} // namespace detail

/// Runs the program with `args` (argv without the program name).
inline int run(const std::vector<std::string> &args, std::ostream &out,
               std::ostream &err) {
    Options o;
    CLI::App app{"PT-symmetric qubit temporal-correlation simulator", "ptqtc"};
    app.set_config("--config", "", "flat key=value file; flags override it");
    app.require_subcommand(1);

    app.add_option("--j", o.j, "coupling rate J");
    app.add_option("--gamma", o.gamma, "gain/loss rate Gamma (accepts pi expressions)");
    app.add_option("--t", o.t, "measurement interval T (scaled time)");
    app.add_option("--tau", o.tau, "scaled evolution time");
    app.add_option("--grid", o.grid, "lo:hi:n grid, inclusive");
    app.add_option("--shots", o.shots, "attempted preparations per probability");
    app.add_option("--seed", o.seed, "random seed");
    app.add_option("--mode", o.mode, "sampling mode: ideal | dilated");
    app.add_option("--format", o.format, "output format: csv | json");
    app.add_option("--out", o.out, "output file (default stdout)");
    app.add_option("--quantity", o.quantity, "montecarlo target: k3 | witness | conditional");
    app.add_option("--q-in", o.q_in, "prepared eigenvalue for --quantity conditional");
    app.add_option("--eps", o.eps, "EP offset for the discontinuity report");
    app.add_option("--tol", o.tol, "golden-section tolerance on T");
    app.add_option("--points", o.points, "grid points of the T scan");
    app.add_option("--ptb-upper", o.ptb_upper, "upper bound of omega t in PTB");
    app.add_flag("--wide", o.wide, "search T in [0, pi/2] instead of [0, pi/4]");
    app.add_flag("--include-ep", o.include_ep, "allow sweep points inside the EP window");
    app.add_flag("--bootstrap", o.bootstrap, "bootstrap standard errors (1000 resamples)");
    app.add_option("--path", o.path, "evolution path: direct | dilation");
    app.add_option("--workers", o.workers, "worker threads");

    const std::vector<std::pair<const char *, const char *>> commands{
        {"evolve", "state trajectory and Bloch vector from |->_y"},
        {"distance", "Fubini-Study distance and evolution speed"},
        {"correlators", "C12, C23, C13 and K3 at one interval T"},
        {"k3", "correlators over a grid of T"},
        {"k3max", "maximal K3 over T for a grid of Gamma/J, with the EP jump"},
        {"witness", "quantum witness W"},
        {"montecarlo", "finite-shot estimate with standard error"},
        {"dilation-check", "residuals of the dilation identities"}};
    for (const auto &[name, help] : commands) {
        app.add_subcommand(name, help)->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << detail::one_line(e.what()) << '\n';
        return 2;
    }
    o.command = app.get_subcommands().front()->get_name();

    try {
        const Table t = detail::dispatch(o);
        std::ostringstream buf;
        if (o.format == "json") {
            detail::write_json(t, o, buf);
        } else {
            detail::write_csv(t, buf);
        }
        if (o.out.empty()) {
            out << buf.str();
        } else {
            std::ofstream f(o.out);
            if (!f) {
                throw ParameterError("cannot open output file '" + o.out + "'");
            }
            f << buf.str();
        }
        if (t.checks_failed) {
            err << "error: self-check residual exceeded its tolerance\n";
            return 3;
        }
        return 0;
    } catch (const ParameterError &e) {
        err << "error: " << detail::one_line(e.what()) << '\n';
        return 2;
    } catch (const NumericError &e) {
        err << "error: " << detail::one_line(e.what()) << '\n';
        return 3;
    }
}

} // namespace ptqtc::cli
