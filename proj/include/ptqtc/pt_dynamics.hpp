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
 * @file pt_dynamics.hpp
 * Dynamics generated by H = J sx + i Gamma sz.
 *
 * Because H^2 = (J^2 - Gamma^2) I the propagator has a closed form in each
 * of the three regimes: trigonometric below the exceptional point (PTS),
 * polynomial at it (EP) and hyperbolic above it (PTB).
 *
 * Times come in two flavours. RawTime is the coordinate t of the equation
 * of motion. ScaledTime is Omega t in PTS, J t at the EP and omega t in PTB
 * with omega = sqrt(Gamma^2 - J^2).
 */

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "qstate.hpp"

namespace ptqtc {

enum class Regime { PTS, EP, PTB };

inline std::string_view to_string(Regime r) {
    switch (r) {
    case Regime::PTS:
        return "PTS";
    case Regime::EP:
        return "EP";
    case Regime::PTB:
        return "PTB";
    }
    return "?";
}

/// Half-width of the |Gamma/J - 1| window classified as the EP.
inline constexpr double ep_threshold = 1e-9;

struct RawTime {
    double value = 0.0;
};
struct ScaledTime {
    double value = 0.0;
};

class PtParams {
  public:
    PtParams(double j, double gamma) : j_(j), gamma_(gamma) {
        if (!(j > 0.0) || !std::isfinite(j)) {
            throw ParameterError("J must be positive and finite");
        }
        if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
            throw ParameterError("Gamma must be non-negative and finite");
        }
        const double g = gamma / j;
        if (std::abs(g - 1.0) <= ep_threshold) {
            regime_ = Regime::EP;
        } else {
            regime_ = g < 1.0 ? Regime::PTS : Regime::PTB;
        }
        // (J - G)(J + G) avoids cancellation close to the EP.
        omega_ = std::sqrt(std::abs((j - gamma) * (j + gamma)));
    }

    static PtParams from_ratio(double gamma_over_j, double j = 1.0) {
        return {j, gamma_over_j * j};
    }

    [[nodiscard]] double j() const { return j_; }
    [[nodiscard]] double gamma() const { return gamma_; }
    [[nodiscard]] double gamma_over_j() const { return gamma_ / j_; }
    [[nodiscard]] Regime regime() const { return regime_; }
    /// |sqrt(J^2 - Gamma^2)|; Omega in PTS, omega in PTB.
    [[nodiscard]] double omega() const { return omega_; }

    /// Factor converting raw time into scaled time.
    [[nodiscard]] double time_scale() const {
        return regime_ == Regime::EP ? j_ : omega_;
    }

    [[nodiscard]] RawTime to_raw(ScaledTime tau) const {
        return {tau.value / time_scale()};
    }
    [[nodiscard]] ScaledTime to_scaled(RawTime t) const {
        return {t.value * time_scale()};
    }

  private:
    double j_;
    double gamma_;
    Regime regime_;
    double omega_;
};

inline Operator2 hamiltonian(const PtParams &p) {
    return p.j() * pauli::x() + I_unit * (p.gamma() * pauli::z());
}

namespace detail {
// Below this |Omega t| the sin(x)/x and sinh(x)/x ratios use their series.
inline constexpr double series_cutoff = 1e-6;

inline double sinc(double x) {
    return std::abs(x) < series_cutoff ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}
inline double sinhc(double x) {
    return std::abs(x) < series_cutoff ? 1.0 + x * x / 6.0 : std::sinh(x) / x;
}
} // namespace detail

/// exp(-i H t) as c(t) I - i f(t) H.
inline Operator2 propagator(const PtParams &p, RawTime t) {
    if (!(t.value >= 0.0)) {
        throw ParameterError("propagator: time must be non-negative");
    }
    const Operator2 h = hamiltonian(p);
    const double x = p.omega() * t.value;
    double c = 1.0;
    double f = t.value;
    switch (p.regime()) {
    case Regime::EP:
        break;
    case Regime::PTS:
        c = std::cos(x);
        f = t.value * detail::sinc(x);
        break;
    case Regime::PTB:
        c = std::cosh(x);
        f = t.value * detail::sinhc(x);
        break;
    }
    return c * Operator2::Identity() - (I_unit * f) * h;
}

inline Operator2 propagator(const PtParams &p, ScaledTime tau) {
    return propagator(p, p.to_raw(tau));
}

/// Normalised U(t) psi0. Throws VanishingNormError when |U psi0| is below
/// `norm_floor`.
inline PureState evolve_state(const PureState &psi0, const PtParams &p,
                              RawTime t, double norm_floor = tol::norm_floor) {
    if (!psi0.is_normalized()) {
        throw NormalizationError("evolve_state: initial state not normalized");
    }
    return ptqtc::apply(propagator(p, t), psi0).normalized(norm_floor);
}

inline PureState evolve_state(const PureState &psi0, const PtParams &p,
                              ScaledTime tau,
                              double norm_floor = tol::norm_floor) {
    return evolve_state(psi0, p, p.to_raw(tau), norm_floor);
}

/// Right-hand side of the normalised density-matrix flow
///   d rho/dt = -iJ[sx, rho] + Gamma{sz, rho} - 2 Gamma rho Tr(sz rho).
inline Operator2 nonlinear_flow_rhs(const PtParams &p, const Operator2 &rho) {
    static const Operator2 sx = pauli::x();
    static const Operator2 sz = pauli::z();
    const cplx sz_expect = (sz * rho).trace();
    return (-I_unit * p.j()) * (sx * rho - rho * sx) +
           p.gamma() * (sz * rho + rho * sz) - (2.0 * p.gamma() * sz_expect) * rho;
}

/// Classical RK4 with a fixed step no larger than `dt`, both in raw time.
/// The step is shortened so that an integer number of steps lands on t.
inline DensityMatrix evolve_density_nonlinear(const DensityMatrix &rho0,
                                              const PtParams &p, RawTime t,
                                              RawTime dt) {
    if (!(dt.value > 0.0)) {
        throw ParameterError("evolve_density_nonlinear: dt must be positive");
    }
    if (!(t.value >= 0.0)) {
        throw ParameterError("evolve_density_nonlinear: t must be non-negative");
    }
    if (std::abs(rho0.trace() - 1.0) > tol::normalized_input) {
        throw NormalizationError("evolve_density_nonlinear: trace(rho0) != 1");
    }
    if (t.value == 0.0) {
        return rho0;
    }
    const auto steps =
        static_cast<long>(std::ceil(t.value / dt.value * (1.0 - 1e-12)));
    const double h = t.value / static_cast<double>(std::max(1L, steps));
    Operator2 rho = rho0.m;
    for (long i = 0; i < std::max(1L, steps); ++i) {
        const Operator2 k1 = nonlinear_flow_rhs(p, rho);
        const Operator2 k2 = nonlinear_flow_rhs(p, rho + (0.5 * h) * k1);
        const Operator2 k3 = nonlinear_flow_rhs(p, rho + (0.5 * h) * k2);
        const Operator2 k4 = nonlinear_flow_rhs(p, rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return DensityMatrix(rho);
}

/// Scaled-time form; `dt` is a scaled-time step (default 1e-3).
inline DensityMatrix evolve_density_nonlinear(const DensityMatrix &rho0,
                                              const PtParams &p, ScaledTime t,
                                              ScaledTime dt = {1e-3}) {
    if (!(dt.value > 0.0)) {
        throw ParameterError("evolve_density_nonlinear: dt must be positive");
    }
    return evolve_density_nonlinear(rho0, p, p.to_raw(t), p.to_raw(dt));
}

struct Trajectory {
    std::vector<double> times; ///< scaled time
    std::vector<PureState> states;
    std::vector<BlochVector> bloch;
    std::vector<double> distance; ///< Fubini-Study distance from states[0]
};

inline Trajectory trajectory(const PureState &psi0, const PtParams &p,
                             std::span<const double> tau_grid) {
    if (tau_grid.empty()) {
        throw ParameterError("trajectory: empty time grid");
    }
    if (tau_grid.front() != 0.0) {
        throw ParameterError("trajectory: time grid must start at 0");
    }
    for (std::size_t i = 1; i < tau_grid.size(); ++i) {
        if (!(tau_grid[i] > tau_grid[i - 1])) {
            throw ParameterError("trajectory: time grid must be strictly increasing");
        }
    }
    const PureState start = psi0.normalized();
    Trajectory out;
    out.times.assign(tau_grid.begin(), tau_grid.end());
    out.states.reserve(tau_grid.size());
    out.bloch.reserve(tau_grid.size());
    out.distance.reserve(tau_grid.size());
    for (const double tau : tau_grid) {
        const PureState s = evolve_state(start, p, ScaledTime{tau});
        out.states.push_back(s);
        out.bloch.push_back(bloch_from(s));
        out.distance.push_back(tau == 0.0 ? 0.0 : fubini_study_distance(start, s));
    }
    return out;
}

/// v = ds/dtau by central differences, one-sided at the two ends.
inline std::vector<double> speed_profile(const Trajectory &traj) {
    const auto &t = traj.times;
    const auto &s = traj.distance;
    const std::size_t n = t.size();
    if (n < 2 || s.size() != n) {
        throw ParameterError("speed_profile: need at least two trajectory points");
    }
    std::vector<double> v(n);
    v.front() = (s[1] - s[0]) / (t[1] - t[0]);
    v.back() = (s[n - 1] - s[n - 2]) / (t[n - 1] - t[n - 2]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        v[i] = (s[i + 1] - s[i - 1]) / (t[i + 1] - t[i - 1]);
    }
    return v;
}

} // namespace ptqtc
