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
 * @file montecarlo.hpp
 * Finite-shot emulation of the prepare-and-measure experiment.
 *
 * Every estimated probability owns a substream keyed by (operation, slot),
 * and draw i of a slot always decides shot i. Counts therefore do not depend
 * on how shots are split between workers, and changing one slot's budget
 * leaves the others untouched.
 *
 * In dilated mode a shot prepares N(psi (+) eta psi), applies U(tau) and
 * reads out three outcomes: (S, Q=+1), (S, Q=-1) or "A occupied", the last
 * of which is rejected.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "correlations.hpp"
#include "dilation.hpp"
#include "errors.hpp"
#include "pt_dynamics.hpp"
#include "qstate.hpp"
#include "rng.hpp"

namespace ptqtc {

enum class SamplingMode { Ideal, Dilated };

struct ShotConfig {
    std::uint64_t shots = 10000; ///< attempted preparations per probability
    std::uint64_t seed = 0;
    SamplingMode mode = SamplingMode::Ideal;
    unsigned workers = 1;
    bool bootstrap = false; ///< parametric bootstrap instead of delta method
    unsigned bootstrap_resamples = 1000;
};

struct ShotRecord {
    std::uint64_t accepted = 0;
    std::uint64_t attempted = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    double success_rate = 0.0;
};

/// Stream identifiers: operation in the high word, probability slot in the
/// low word.
namespace stream {
inline constexpr std::uint64_t conditional = 1;
inline constexpr std::uint64_t k3 = 2;
inline constexpr std::uint64_t witness = 3;
inline constexpr std::uint64_t bootstrap = 4;

constexpr std::uint64_t id(std::uint64_t op, std::uint64_t slot) {
    return (op << 32) | slot;
}
} // namespace stream

/// Per-shot outcome distribution: P(accepted and Q = +1), P(accepted).
struct ShotModel {
    double p_plus = 0.0;
    double p_accept = 1.0;
};

struct OutcomeCounts {
    std::uint64_t attempted = 0;
    std::uint64_t accepted = 0;
    std::uint64_t plus = 0;
};

inline ShotModel shot_model(const PureState &psi, double tau, const PtParams &p,
                            const Projectors &proj, SamplingMode mode) {
    if (mode == SamplingMode::Ideal) {
        const PureState end =
            tau == 0.0 ? psi.normalized() : evolve_state(psi, p, ScaledTime{tau});
        return {proj.probability(1, end), 1.0};
    }
    const DilatedState out =
        ptqtc::apply(dilation_unitary(p, ScaledTime{tau}), embed_initial(psi, p));
    const Vector2 s = out.s_block();
    const double p_plus = (s.adjoint() * proj.plus * s)(0, 0).real();
    const double p_accept = s.squaredNorm();
    return {std::clamp(p_plus, 0.0, p_accept), std::min(p_accept, 1.0)};
}

namespace detail {
inline OutcomeCounts count_range(const ShotModel &model, const RandomStream &rs,
                                 std::uint64_t begin, std::uint64_t end) {
    OutcomeCounts c;
    c.attempted = end - begin;
    for (std::uint64_t i = begin; i < end; ++i) {
        const double u = rs.uniform(i);
        if (u < model.p_plus) {
            ++c.plus;
            ++c.accepted;
        } else if (u < model.p_accept) {
            ++c.accepted;
        }
    }
    return c;
}
} // namespace detail

inline OutcomeCounts sample_counts(const ShotModel &model, std::uint64_t shots,
                                   const RandomStream &rs, unsigned workers = 1) {
    workers = std::max(1u, workers);
    if (workers == 1 || shots < 2 * std::uint64_t{workers}) {
        return detail::count_range(model, rs, 0, shots);
    }
    std::vector<std::future<OutcomeCounts>> parts;
    const std::uint64_t chunk = shots / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t b = w * chunk;
        const std::uint64_t e = (w + 1 == workers) ? shots : b + chunk;
        parts.push_back(std::async(std::launch::async, [&model, &rs, b, e] {
            return detail::count_range(model, rs, b, e);
        }));
    }
    OutcomeCounts total;
    for (auto &f : parts) {
        const OutcomeCounts c = f.get();
        total.attempted += c.attempted;
        total.accepted += c.accepted;
        total.plus += c.plus;
    }
    return total;
}

/// Frequency of Q = +1 among accepted shots, binomial standard error.
inline ShotRecord to_record(const OutcomeCounts &c) {
    if (c.accepted == 0) {
        throw NoStatisticsError("all " + std::to_string(c.attempted) +
                                " shots rejected by post-selection");
    }
    ShotRecord r;
    r.accepted = c.accepted;
    r.attempted = c.attempted;
    r.estimate = static_cast<double>(c.plus) / static_cast<double>(c.accepted);
    r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) /
                            static_cast<double>(c.accepted));
    r.success_rate =
        static_cast<double>(c.accepted) / static_cast<double>(c.attempted);
    return r;
}

namespace detail {
inline void require_config(const ShotConfig &cfg) {
    if (cfg.shots < 1) {
        throw ParameterError("shots must be >= 1");
    }
    if (cfg.bootstrap && cfg.bootstrap_resamples < 2) {
        throw ParameterError("bootstrap needs at least two resamples");
    }
}

inline ShotRecord sample_slot(const PureState &psi, double tau, const PtParams &p,
                              const Projectors &proj, const ShotConfig &cfg,
                              std::uint64_t stream_id, std::uint64_t shots) {
    const ShotModel model = shot_model(psi, tau, p, proj, cfg.mode);
    return to_record(
        sample_counts(model, shots, RandomStream(cfg.seed, stream_id), cfg.workers));
}

// Outcome q0 for which `psi` is an eigenstate of the scenario observable.
inline int eigen_outcome(const MeasurementScenario &sc) {
    for (const int q : {1, -1}) {
        if (sc.projectors().probability(q, sc.initial_state()) >= 1.0 - 1e-12) {
            return q;
        }
    }
    throw ParameterError(
        "sampling requires an initial state that is an eigenstate of the observable");
}
} // namespace detail

/// Estimate of p_tau(+1 | q_in).
inline ShotRecord sample_conditional(int q_in, double tau, const PtParams &p,
                                     const ShotConfig &cfg,
                                     const MeasurementScenario &sc = {},
                                     std::uint64_t slot = 0) {
    detail::require_config(cfg);
    detail::require_outcome(q_in);
    detail::require_time(tau);
    return detail::sample_slot(sc.eigenstate(q_in), tau, p, sc.projectors(), cfg,
                               stream::id(stream::conditional, slot), cfg.shots);
}

/// K3 estimate from five independently sampled probabilities:
///   a = p_T(+|q0)  for C12,        d = p_2T(+|q0) for C13,
///   m = p_T(+|q0)  as the C23 marginal,
///   b = p_T(+|+),  c = p_T(+|-)    for the C23 conditionals,
/// so K3 = 2 q0 (a - d) + m (2b - 1) - (1 - m)(2c - 1).
inline ShotRecord k3_sampled(double T, const PtParams &p,
                             const MeasurementScenario &sc, const ShotConfig &cfg) {
    detail::require_config(cfg);
    detail::require_time(T);
    const int q0 = detail::eigen_outcome(sc);
    const auto &proj = sc.projectors();
    const PureState start = sc.eigenstate(q0);

    struct Slot {
        PureState psi;
        double tau;
    };
    const std::array<Slot, 5> slots{{{start, T},
                                     {start, 2.0 * T},
                                     {start, T},
                                     {sc.eigenstate(1), T},
                                     {sc.eigenstate(-1), T}}};
    std::array<ShotRecord, 5> rec;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        rec[i] = detail::sample_slot(slots[i].psi, slots[i].tau, p, proj, cfg,
                                     stream::id(stream::k3, i), cfg.shots);
    }

    const auto k3_of = [q0](const std::array<double, 5> &x) {
        const double a = x[0], d = x[1], m = x[2], b = x[3], c = x[4];
        return 2.0 * q0 * (a - d) + m * (2.0 * b - 1.0) -
               (1.0 - m) * (2.0 * c - 1.0);
    };
    std::array<double, 5> est{};
    for (std::size_t i = 0; i < 5; ++i) {
        est[i] = rec[i].estimate;
    }

    ShotRecord out;
    for (const auto &r : rec) {
        out.accepted += r.accepted;
        out.attempted += r.attempted;
    }
    out.success_rate =
        static_cast<double>(out.accepted) / static_cast<double>(out.attempted);
    out.estimate = k3_of(est);

    if (cfg.bootstrap) {
        std::mt19937_64 eng(
            RandomStream(cfg.seed, stream::id(stream::bootstrap, stream::k3))
                .derived_seed());
        double sum = 0.0;
        double sum_sq = 0.0;
        for (unsigned r = 0; r < cfg.bootstrap_resamples; ++r) {
            std::array<double, 5> x{};
            for (std::size_t i = 0; i < 5; ++i) {
                std::binomial_distribution<std::uint64_t> draw(rec[i].accepted,
                                                               est[i]);
                x[i] = static_cast<double>(draw(eng)) /
                       static_cast<double>(rec[i].accepted);
            }
            const double k = k3_of(x);
            sum += k;
            sum_sq += k * k;
        }
        const double n = cfg.bootstrap_resamples;
        const double mean = sum / n;
        out.std_error = std::sqrt(std::max(0.0, (sum_sq - n * mean * mean) / (n - 1)));
    } else {
        const double m = est[2], b = est[3], c = est[4];
        const std::array<double, 5> grad{2.0 * q0, -2.0 * q0,
                                         (2.0 * b - 1.0) + (2.0 * c - 1.0),
                                         2.0 * m, -2.0 * (1.0 - m)};
        double var = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            var += grad[i] * grad[i] * rec[i].std_error * rec[i].std_error;
        }
        out.std_error = std::sqrt(var);
    }
    return out;
}

/// Sampled quantum witness.
///
/// p_without comes from `shots` preparations of the witness state. For
/// p_with, `shots` sigma_y measurements at tau = 0 split the budget into
/// n_+ and n_- re-preparations, and p_with = sum_m (n_m / n) p_hat(+|m).
inline ShotRecord witness_sampled(const PtParams &p, const ShotConfig &cfg) {
    detail::require_config(cfg);
    const PureState psi0 = witness_initial_state(p);
    const Projectors proj = measure_projectors(pauli::y());
    const double tau = witness_evolution_time;

    const ShotRecord without = detail::sample_slot(
        psi0, tau, p, proj, cfg, stream::id(stream::witness, 0), cfg.shots);

    // First measurement: an ordinary Born draw on the undilated qubit.
    const OutcomeCounts first = sample_counts({proj.probability(1, psi0), 1.0},
                                              cfg.shots,
                                              RandomStream(cfg.seed, stream::id(stream::witness, 1)),
                                              cfg.workers);
    const std::array<std::uint64_t, 2> branch_shots{first.plus,
                                                    cfg.shots - first.plus};
    double p_with = 0.0;
    double var_with = 0.0;
    std::array<double, 2> q_hat{0.0, 0.0};
    std::uint64_t accepted = without.accepted;
    const double n = static_cast<double>(cfg.shots);
    for (std::size_t k = 0; k < 2; ++k) {
        if (branch_shots[k] == 0) {
            continue;
        }
        const int m = k == 0 ? 1 : -1;
        const ShotRecord r = detail::sample_slot(
            proj.eigenstate(m), tau, p, proj, cfg, stream::id(stream::witness, 2 + k),
            branch_shots[k]);
        const double weight = static_cast<double>(branch_shots[k]) / n;
        q_hat[k] = r.estimate;
        p_with += weight * r.estimate;
        var_with += weight * weight * r.std_error * r.std_error;
        accepted += r.accepted;
    }
    const double w_plus = static_cast<double>(branch_shots[0]) / n;
    var_with += (q_hat[0] - q_hat[1]) * (q_hat[0] - q_hat[1]) * w_plus *
                (1.0 - w_plus) / n;

    ShotRecord out;
    out.attempted = 2 * cfg.shots;
    out.accepted = accepted;
    out.success_rate =
        static_cast<double>(out.accepted) / static_cast<double>(out.attempted);
    out.estimate = std::abs(p_with - without.estimate);
    out.std_error = std::sqrt(var_with + without.std_error * without.std_error);
    return out;
}

} // namespace ptqtc
