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
 * @file dilation.hpp
 * Unitary dilation of the PT-symmetric qubit on H_S (+) H_A.
 *
 * The initial state N(psi0 (+) eta psi0) is driven by U = [[F, G], [-G, F]]
 * and the runs that end with H_A occupied are discarded. The surviving S
 * block equals N U_PT psi0, because F + G eta = U_PT. Only defined for
 * Gamma < J, where eta is positive definite.
 */

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"
#include "pt_dynamics.hpp"
#include "qstate.hpp"

namespace ptqtc {

using Vector4 = Eigen::Vector4cd;
using Operator4 = Eigen::Matrix4cd;

struct MetricOperator {
    Operator2 m;
};

struct DilatedState {
    Vector4 amp = Vector4::Zero();

    [[nodiscard]] Vector2 s_block() const { return amp.head<2>(); }
    [[nodiscard]] Vector2 a_block() const { return amp.tail<2>(); }
    [[nodiscard]] double norm_squared() const { return amp.squaredNorm(); }
};

struct DilationUnitary {
    Operator4 m;

    [[nodiscard]] Operator2 f_block() const { return m.topLeftCorner<2, 2>(); }
    [[nodiscard]] Operator2 g_block() const { return m.topRightCorner<2, 2>(); }
};

struct PostSelected {
    PureState state;
    double success_prob = 0.0;
};

namespace detail {
inline void require_pts(const PtParams &p, const char *what) {
    if (p.regime() != Regime::PTS) {
        throw RegimeError(std::string(what) +
                          ": dilation requires Gamma/J < 1, got regime " +
                          std::string(to_string(p.regime())));
    }
}
} // namespace detail

/// eta = (J I + Gamma sy) / Omega.
inline MetricOperator metric_operator(const PtParams &p) {
    detail::require_pts(p, "metric_operator");
    return {(p.j() * pauli::identity() + p.gamma() * pauli::y()) / p.omega()};
}

/// max |eta H - H^dagger eta|.
inline double intertwining_residual(const MetricOperator &eta, const PtParams &p) {
    const Operator2 h = hamiltonian(p);
    return (eta.m * h - h.adjoint() * eta.m).cwiseAbs().maxCoeff();
}

inline DilatedState embed_initial(const PureState &psi0, const PtParams &p) {
    if (!psi0.is_normalized()) {
        throw NormalizationError("embed_initial: initial state not normalized");
    }
    const MetricOperator eta = metric_operator(p);
    const Vector2 ancilla = eta.m * psi0.amp;
    const double n = 1.0 / std::sqrt(psi0.norm_squared() + ancilla.squaredNorm());
    DilatedState out;
    out.amp.head<2>() = n * psi0.amp;
    out.amp.tail<2>() = n * ancilla;
    return out;
}

/// F = cos(tau) I - i (Omega/J) sin(tau) sx, G = (Gamma/J) sin(tau) sz.
inline DilationUnitary dilation_unitary(const PtParams &p, ScaledTime tau) {
    detail::require_pts(p, "dilation_unitary");
    const double c = std::cos(tau.value);
    const double s = std::sin(tau.value);
    const Operator2 f = c * pauli::identity() -
                        (I_unit * (p.omega() / p.j() * s)) * pauli::x();
    const Operator2 g = (p.gamma_over_j() * s) * pauli::z();
    DilationUnitary u;
    u.m.topLeftCorner<2, 2>() = f;
    u.m.topRightCorner<2, 2>() = g;
    u.m.bottomLeftCorner<2, 2>() = -g;
    u.m.bottomRightCorner<2, 2>() = f;
    return u;
}

inline double unitarity_residual(const DilationUnitary &u) {
    return (u.m.adjoint() * u.m - Operator4::Identity()).cwiseAbs().maxCoeff();
}

/// max |F + G eta - U_PT(tau)|.
inline double block_identity_residual(const PtParams &p, ScaledTime tau) {
    const DilationUnitary u = dilation_unitary(p, tau);
    const Operator2 lhs = u.f_block() + u.g_block() * metric_operator(p).m;
    return (lhs - propagator(p, tau)).cwiseAbs().maxCoeff();
}

inline DilatedState apply(const DilationUnitary &u, const DilatedState &psi) {
    return {Vector4(u.m * psi.amp)};
}

/// Keeps the S block; its squared norm is the acceptance probability.
inline PostSelected postselect(const DilatedState &psi) {
    if (std::abs(psi.norm_squared() - 1.0) > tol::normalized_input) {
        throw NormalizationError("postselect: dilated state not normalized");
    }
    const PureState s(psi.s_block());
    const double prob = s.norm_squared();
    if (!(std::sqrt(prob) > tol::norm_floor)) {
        throw VanishingNormError("postselect: S block is empty");
    }
    return {s.normalized(), std::min(prob, 1.0)};
}

inline PostSelected pt_via_dilation(const PureState &psi0, const PtParams &p,
                                    ScaledTime tau) {
    return postselect(ptqtc::apply(dilation_unitary(p, tau), embed_initial(psi0, p)));
}

} // namespace ptqtc
