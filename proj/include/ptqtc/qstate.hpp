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
 * @file qstate.hpp
 * Two-level state and operator primitives.
 *
 * The computational basis is ordered (|1>, |2>) = (gain level, loss level).
 * States are compared through fidelities only; global phases carry no
 * meaning anywhere in the library.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"

namespace ptqtc {

using cplx = std::complex<double>;
using Operator2 = Eigen::Matrix2cd;
using Vector2 = Eigen::Vector2cd;

inline constexpr cplx I_unit{0.0, 1.0};

namespace tol {
/// Algebraic identities on closed forms.
inline constexpr double algebraic = 1e-12;
/// Accepted deviation of an input from unit norm or unit trace.
inline constexpr double normalized_input = 1e-9;
/// Smallest norm a state may have before renormalisation is refused.
inline constexpr double norm_floor = 1e-14;
} // namespace tol

namespace pauli {
inline Operator2 identity() { return Operator2::Identity(); }
inline Operator2 x() {
    Operator2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}
inline Operator2 y() {
    Operator2 m;
    m << 0.0, -I_unit, I_unit, 0.0;
    return m;
}
inline Operator2 z() {
    Operator2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}
} // namespace pauli

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    [[nodiscard]] double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Pure qubit state on the basis (|1>, |2>). Not necessarily normalised.
struct PureState {
    Vector2 amp = Vector2(1.0, 0.0);

    PureState() = default;
    explicit PureState(const Vector2 &a) : amp(a) {}
    PureState(cplx a1, cplx a2) : amp(a1, a2) {}

    static PureState one() { return {1.0, 0.0}; }
    static PureState two() { return {0.0, 1.0}; }
    /// (|1> + i|2>)/sqrt(2), the +1 eigenstate of sigma_y.
    static PureState plus_y() {
        return {std::numbers::sqrt2 / 2.0, I_unit * (std::numbers::sqrt2 / 2.0)};
    }
    /// (|1> - i|2>)/sqrt(2), the -1 eigenstate of sigma_y.
    static PureState minus_y() {
        return {std::numbers::sqrt2 / 2.0, -I_unit * (std::numbers::sqrt2 / 2.0)};
    }

    [[nodiscard]] double norm_squared() const { return amp.squaredNorm(); }

    [[nodiscard]] bool is_normalized(double eps = tol::normalized_input) const {
        return std::abs(norm_squared() - 1.0) <= eps;
    }

    /// Unit-norm copy. Throws VanishingNormError below `floor`.
    [[nodiscard]] PureState normalized(double floor = tol::norm_floor) const {
        const double n = amp.norm();
        if (!(n > floor)) {
            throw VanishingNormError("state norm " + std::to_string(n) +
                                     " below floor");
        }
        return PureState(Vector2(amp / n));
    }
};

inline cplx inner(const PureState &a, const PureState &b) {
    return a.amp.dot(b.amp); // conjugates the first argument
}

/// |<a|b>|^2 / (|a|^2 |b|^2).
inline double fidelity(const PureState &a, const PureState &b) {
    return std::norm(inner(a, b)) / (a.norm_squared() * b.norm_squared());
}

/// Call as ptqtc::apply; an unqualified call also finds std::apply by ADL.
inline PureState apply(const Operator2 &op, const PureState &psi) {
    return PureState(Vector2(op * psi.amp));
}

struct DensityMatrix {
    Operator2 m = Operator2::Identity() / 2.0;

    DensityMatrix() = default;
    explicit DensityMatrix(const Operator2 &entries) : m(entries) {}

    /// |psi><psi| for the normalised version of psi.
    static DensityMatrix from_pure(const PureState &psi) {
        const PureState u = psi.normalized();
        return DensityMatrix(Operator2(u.amp * u.amp.adjoint()));
    }
    static DensityMatrix maximally_mixed() { return DensityMatrix(); }

    [[nodiscard]] double trace() const { return m.trace().real(); }

    [[nodiscard]] double hermiticity_residual() const {
        return (m - m.adjoint()).cwiseAbs().maxCoeff();
    }

    /// <psi|rho|psi> for a normalised psi.
    [[nodiscard]] double fidelity_with(const PureState &psi) const {
        const PureState u = psi.normalized();
        return (u.amp.adjoint() * m * u.amp)(0, 0).real();
    }
};

inline bool is_hermitian(const Operator2 &op, double eps = tol::algebraic) {
    return (op - op.adjoint()).cwiseAbs().maxCoeff() <=
           eps * std::max(1.0, op.cwiseAbs().maxCoeff());
}

inline bool is_unitary(const Operator2 &op, double eps = tol::algebraic) {
    return (op.adjoint() * op - Operator2::Identity()).cwiseAbs().maxCoeff() <=
           eps;
}

inline BlochVector bloch_from(const PureState &psi) {
    if (!psi.is_normalized()) {
        throw NormalizationError("bloch_from: state norm^2 = " +
                                 std::to_string(psi.norm_squared()));
    }
    const cplx a1 = psi.amp(0);
    const cplx a2 = psi.amp(1);
    const cplx coh = std::conj(a1) * a2;
    return {2.0 * coh.real(), 2.0 * coh.imag(), std::norm(a1) - std::norm(a2)};
}

inline BlochVector bloch_from(const DensityMatrix &rho) {
    if (std::abs(rho.trace() - 1.0) > tol::normalized_input) {
        throw NormalizationError("bloch_from: trace = " +
                                 std::to_string(rho.trace()));
    }
    return {(pauli::x() * rho.m).trace().real(),
            (pauli::y() * rho.m).trace().real(),
            (pauli::z() * rho.m).trace().real()};
}

/// s = arccos|<a|b>|, in [0, pi/2].
///
/// Evaluated as atan2(|det[a b]|, |<a|b>|): for two-component vectors
/// |det|^2 + |<a|b>|^2 = |a|^2 |b|^2, and atan2 keeps full precision near
/// s = 0 where arccos does not.
inline double fubini_study_distance(const PureState &a, const PureState &b) {
    if (!a.is_normalized() || !b.is_normalized()) {
        throw NormalizationError("fubini_study_distance: inputs must be normalized");
    }
    const double overlap = std::abs(inner(a, b));
    const double det = std::abs(a.amp(0) * b.amp(1) - a.amp(1) * b.amp(0));
    return std::atan2(det, overlap);
}

/// Equatorial rotation exp{-i theta [cos(phi) sx + sin(phi) sy] / 2}.
inline Operator2 rotation(double theta, double phi) {
    const Operator2 axis = std::cos(phi) * pauli::x() + std::sin(phi) * pauli::y();
    return std::cos(theta / 2.0) * pauli::identity() -
           I_unit * std::sin(theta / 2.0) * axis;
}

/// Spectral projectors of a Hermitian two-level observable. `plus` belongs
/// to the larger eigenvalue, which is read as the outcome Q = +1.
struct Projectors {
    Operator2 plus;
    Operator2 minus;
    double lambda_plus = 1.0;
    double lambda_minus = -1.0;

    [[nodiscard]] const Operator2 &for_outcome(int q) const {
        return q > 0 ? plus : minus;
    }

    /// Normalised eigenvector for outcome q (+1 or -1), phase arbitrary.
    [[nodiscard]] PureState eigenstate(int q) const {
        const Operator2 &p = for_outcome(q);
        const int col = p.col(0).norm() >= p.col(1).norm() ? 0 : 1;
        return PureState(Vector2(p.col(col))).normalized();
    }

    /// Born probability of outcome q for a normalised state.
    [[nodiscard]] double probability(int q, const PureState &psi) const {
        return (psi.amp.adjoint() * for_outcome(q) * psi.amp)(0, 0).real() /
               psi.norm_squared();
    }
};

inline Projectors measure_projectors(const Operator2 &observable) {
    if (!is_hermitian(observable)) {
        throw ParameterError("measure_projectors: observable is not Hermitian");
    }
    const double a = observable(0, 0).real();
    const double d = observable(1, 1).real();
    const cplx b = observable(0, 1);
    const double mean = 0.5 * (a + d);
    const double half_gap = std::hypot(0.5 * (a - d), std::abs(b));
    const double scale = std::max(1.0, observable.cwiseAbs().maxCoeff());
    if (half_gap <= tol::algebraic * scale) {
        throw DegeneracyError("measure_projectors: degenerate spectrum");
    }
    Projectors out;
    out.lambda_plus = mean + half_gap;
    out.lambda_minus = mean - half_gap;
    const Operator2 id = Operator2::Identity();
    out.plus = (observable - out.lambda_minus * id) / (2.0 * half_gap);
    out.minus = id - out.plus;
    return out;
}

} // namespace ptqtc
