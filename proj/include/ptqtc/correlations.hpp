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
 * @file correlations.hpp
 * Prepare-and-measure two-time correlators, the Leggett-Garg parameter
 * K3 = C12 + C23 - C13 and the quantum witness W.
 *
 * Measurements happen at scaled times 0, T and 2T. A correlator C_ij is
 * assembled from the outcome distribution at t_i and the conditional
 * probabilities p_tau(Q'|Q) of re-preparing the eigenstate |Q> and
 * measuring Q' a time tau later. For the default scenario (initial state
 * |->_y, observable sigma_y) this gives
 *
 *   C12 = -p_T(+|-) + p_T(-|-)
 *   C13 = -p_2T(+|-) + p_2T(-|-)
 *   C23 =  p_T(+|-)p_T(+|+) - p_T(+|-)p_T(-|+)
 *        - p_T(-|-)p_T(+|-) + p_T(-|-)p_T(-|-)
 */

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "dilation.hpp"
#include "errors.hpp"
#include "pt_dynamics.hpp"
#include "qstate.hpp"

namespace ptqtc {

/// How a state is propagated: the closed-form propagator, or the dilated
/// unitary followed by post-selection.
enum class EvolutionPath { Direct, Dilation };

class MeasurementScenario {
  public:
    MeasurementScenario()
        : MeasurementScenario(PureState::minus_y(), pauli::y()) {}

    MeasurementScenario(const PureState &initial, const Operator2 &observable,
                        EvolutionPath path = EvolutionPath::Direct)
        : initial_(initial.normalized()), observable_(observable),
          projectors_(measure_projectors(observable)), path_(path) {}

    [[nodiscard]] const PureState &initial_state() const { return initial_; }
    [[nodiscard]] const Operator2 &observable() const { return observable_; }
    [[nodiscard]] const Projectors &projectors() const { return projectors_; }
    [[nodiscard]] EvolutionPath path() const { return path_; }

    [[nodiscard]] MeasurementScenario with_path(EvolutionPath path) const {
        MeasurementScenario s = *this;
        s.path_ = path;
        return s;
    }

    [[nodiscard]] PureState eigenstate(int q) const {
        return projectors_.eigenstate(q);
    }

    [[nodiscard]] PureState evolve(const PureState &psi, const PtParams &p,
                                   ScaledTime tau) const {
        if (path_ == EvolutionPath::Dilation) {
            return pt_via_dilation(psi, p, tau).state;
        }
        return evolve_state(psi, p, tau);
    }

  private:
    PureState initial_;
    Operator2 observable_;
    Projectors projectors_;
    EvolutionPath path_;
};

struct CorrelatorSet {
    double T = 0.0;
    double c12 = 0.0;
    double c23 = 0.0;
    double c13 = 0.0;
    double k3 = 0.0;
};

struct WitnessResult {
    double p_with = 0.0;
    double p_without = 0.0;
    double w = 0.0;
};

namespace detail {
inline void require_outcome(int q) {
    if (q != 1 && q != -1) {
        throw ParameterError("outcome must be +1 or -1");
    }
}
inline void require_time(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw ParameterError("time must be finite and non-negative");
    }
}
} // namespace detail

/// Probability of outcome q_out after evolving psi for scaled time tau.
inline double outcome_prob(int q_out, const PureState &psi, double tau,
                           const PtParams &p, const MeasurementScenario &sc) {
    detail::require_outcome(q_out);
    detail::require_time(tau);
    if (tau == 0.0) {
        return sc.projectors().probability(q_out, psi);
    }
    return sc.projectors().probability(q_out, sc.evolve(psi, p, ScaledTime{tau}));
}

/// p_tau(q_out | q_in).
inline double conditional_prob(int q_out, int q_in, double tau,
                               const PtParams &p,
                               const MeasurementScenario &sc = {}) {
    detail::require_outcome(q_in);
    return outcome_prob(q_out, sc.eigenstate(q_in), tau, p, sc);
}

namespace detail {
// Table p_tau(a | b), indexed [a == -1][b == -1].
using CondTable = std::array<std::array<double, 2>, 2>;

inline int idx(int q) { return q > 0 ? 0 : 1; }

inline CondTable conditional_table(double tau, const PtParams &p,
                                   const MeasurementScenario &sc) {
    CondTable t{};
    for (const int b : {1, -1}) {
        const PureState start = sc.eigenstate(b);
        const PureState end =
            tau == 0.0 ? start : sc.evolve(start, p, ScaledTime{tau});
        for (const int a : {1, -1}) {
            t[idx(a)][idx(b)] = sc.projectors().probability(a, end);
        }
    }
    return t;
}

// sum_{a,b} a b P(a) p(b|a)
inline double correlate(const std::array<double, 2> &first,
                        const CondTable &cond) {
    double c = 0.0;
    for (const int a : {1, -1}) {
        for (const int b : {1, -1}) {
            c += a * b * first[idx(a)] * cond[idx(b)][idx(a)];
        }
    }
    return c;
}
} // namespace detail

/// Correlators at measurement times (0, T, 2T).
///
/// Pairs involving t1 weight the re-prepared eigenstates with the Born
/// distribution of the initial state. C23 weights them with the outcome
/// distribution at T of the unmeasured initial state. C13 is a single
/// evolution of length 2T.
inline CorrelatorSet correlators(double T, const PtParams &p,
                                 const MeasurementScenario &sc = {}) {
    detail::require_time(T);
    const Projectors &proj = sc.projectors();
    const PureState &psi0 = sc.initial_state();

    const std::array<double, 2> at_t1{proj.probability(1, psi0),
                                      proj.probability(-1, psi0)};
    const PureState psi_t =
        T == 0.0 ? psi0 : sc.evolve(psi0, p, ScaledTime{T});
    const std::array<double, 2> at_t2{proj.probability(1, psi_t),
                                      proj.probability(-1, psi_t)};

    const detail::CondTable cond_t = detail::conditional_table(T, p, sc);
    const detail::CondTable cond_2t = detail::conditional_table(2.0 * T, p, sc);

    CorrelatorSet out;
    out.T = T;
    out.c12 = detail::correlate(at_t1, cond_t);
    out.c13 = detail::correlate(at_t1, cond_2t);
    out.c23 = detail::correlate(at_t2, cond_t);
    out.k3 = out.c12 + out.c23 - out.c13;
    return out;
}

inline std::vector<CorrelatorSet> k3_curve(std::span<const double> t_grid,
                                           const PtParams &p,
                                           const MeasurementScenario &sc = {}) {
    std::vector<CorrelatorSet> out;
    out.reserve(t_grid.size());
    for (const double T : t_grid) {
        out.push_back(correlators(T, p, sc));
    }
    return out;
}

/// (-sqrt(J - Gamma)|+>_y + sqrt(J + Gamma)|->_y) / sqrt(2J).
inline PureState witness_initial_state(const PtParams &p) {
    if (p.regime() == Regime::PTB) {
        throw RegimeError("quantum_witness: initial state needs Gamma <= J");
    }
    const double minus_w = std::sqrt(p.j() + p.gamma());
    const double plus_w = std::sqrt(std::max(0.0, p.j() - p.gamma()));
    const PureState plus = PureState::plus_y();
    const PureState minus = PureState::minus_y();
    const PureState raw(
        Vector2((-plus_w * plus.amp + minus_w * minus.amp) / std::sqrt(2.0 * p.j())));
    return raw.normalized();
}

inline constexpr double witness_evolution_time = std::numbers::pi / 4.0;

/// W = |p'(+) - p(+)| with and without a sigma_y measurement at tau = 0,
/// followed by evolution for scaled time `tau`.
inline WitnessResult quantum_witness(const PtParams &p,
                                     EvolutionPath path = EvolutionPath::Direct,
                                     double tau = witness_evolution_time) {
    const MeasurementScenario sc(witness_initial_state(p), pauli::y(), path);
    const PureState &psi0 = sc.initial_state();
    WitnessResult out;
    out.p_without = outcome_prob(1, psi0, tau, p, sc);
    for (const int m : {1, -1}) {
        out.p_with += sc.projectors().probability(m, psi0) *
                      conditional_prob(1, m, tau, p, sc);
    }
    out.w = std::abs(out.p_with - out.p_without);
    return out;
}

} // namespace ptqtc
