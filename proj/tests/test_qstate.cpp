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
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ptqtc/qstate.hpp"

namespace ptqtc {
namespace {

constexpr double pi = std::numbers::pi;

PureState random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    return PureState(cplx(n(rng), n(rng)), cplx(n(rng), n(rng))).normalized();
}

TEST(BlochFrom, BasisAndSigmaYEigenstates) {
    const BlochVector one = bloch_from(PureState::one());
    EXPECT_DOUBLE_EQ(one.x, 0.0);
    EXPECT_DOUBLE_EQ(one.y, 0.0);
    EXPECT_DOUBLE_EQ(one.z, 1.0);

    const BlochVector m = bloch_from(PureState::minus_y());
    EXPECT_NEAR(m.x, 0.0, 1e-15);
    EXPECT_NEAR(m.y, -1.0, 1e-15);
    EXPECT_NEAR(m.z, 0.0, 1e-15);
}

TEST(BlochFrom, MaximallyMixedIsOrigin) {
    const BlochVector b = bloch_from(DensityMatrix::maximally_mixed());
    EXPECT_EQ(b.norm(), 0.0);
}

TEST(BlochFrom, DensityAndPureViewsAgree) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const PureState psi = random_state(rng);
        const BlochVector a = bloch_from(psi);
        const BlochVector b = bloch_from(DensityMatrix::from_pure(psi));
        EXPECT_NEAR(a.x, b.x, 1e-14);
        EXPECT_NEAR(a.y, b.y, 1e-14);
        EXPECT_NEAR(a.z, b.z, 1e-14);
    }
}

TEST(BlochFrom, RejectsUnnormalizedInput) {
    EXPECT_THROW(bloch_from(PureState(cplx(1.0), cplx(1.0))), NormalizationError);
    EXPECT_THROW(bloch_from(DensityMatrix(Operator2::Identity())), NormalizationError);
}

TEST(BlochFrom, PureStatesLieOnTheSphere) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        EXPECT_NEAR(bloch_from(random_state(rng)).norm(), 1.0, 1e-10);
    }
}

TEST(FubiniStudy, Examples) {
    const PureState m = PureState::minus_y();
    const PureState p = PureState::plus_y();
    EXPECT_EQ(fubini_study_distance(m, m), 0.0);
    EXPECT_NEAR(fubini_study_distance(m, p), pi / 2, 1e-15);
    const PureState mid(Vector2((m.amp + p.amp) / std::sqrt(2.0)));
    EXPECT_NEAR(fubini_study_distance(m, mid), pi / 4, 1e-15);
}

TEST(FubiniStudy, SymmetricPhaseInvariantAndTriangle) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> phase(0.0, 2 * pi);
    for (int i = 0; i < 500; ++i) {
        const PureState a = random_state(rng);
        const PureState b = random_state(rng);
        const PureState c = random_state(rng);
        const double ab = fubini_study_distance(a, b);
        EXPECT_GE(ab, 0.0);
        EXPECT_LE(ab, pi / 2);
        EXPECT_NEAR(ab, fubini_study_distance(b, a), 1e-15);
        const PureState b_phase(Vector2(std::polar(1.0, phase(rng)) * b.amp));
        EXPECT_NEAR(ab, fubini_study_distance(a, b_phase), 1e-12);
        EXPECT_LE(fubini_study_distance(a, c), ab + fubini_study_distance(b, c) + 1e-9);
    }
}

TEST(Rotation, ClosedForms) {
    EXPECT_LT((rotation(0.0, 1.234) - Operator2::Identity()).cwiseAbs().maxCoeff(), 1e-15);
    const Operator2 flip = rotation(pi, 0.0);
    EXPECT_LT((flip - (-I_unit) * pauli::x()).cwiseAbs().maxCoeff(), 1e-15);

    // exp(-i pi sy / 4) = (I - i sy)/sqrt(2)
    const Operator2 half = rotation(pi / 2, pi / 2);
    const Operator2 expected = (pauli::identity() - I_unit * pauli::y()) / std::sqrt(2.0);
    EXPECT_LT((half - expected).cwiseAbs().maxCoeff(), 1e-15);
    const PureState target(cplx(1.0), cplx(1.0));
    EXPECT_NEAR(fidelity(ptqtc::apply(half, PureState::one()), target), 1.0, 1e-15);
}

TEST(Rotation, UnitaryAndInverse) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-2 * pi, 2 * pi);
    for (int i = 0; i < 100; ++i) {
        const double theta = ang(rng);
        const double phi = ang(rng);
        const Operator2 r = rotation(theta, phi);
        EXPECT_TRUE(is_unitary(r));
        EXPECT_NEAR(std::abs(r.determinant()), 1.0, 1e-12);
        EXPECT_LT((r * rotation(-theta, phi) - Operator2::Identity()).cwiseAbs().maxCoeff(),
                  1e-12);
    }
}

void expect_projector_algebra(const Projectors &pr) {
    const Operator2 id = Operator2::Identity();
    EXPECT_LT((pr.plus * pr.minus).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((pr.plus + pr.minus - id).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((pr.plus * pr.plus - pr.plus).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((pr.minus * pr.minus - pr.minus).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MeasureProjectors, SigmaY) {
    const Projectors pr = measure_projectors(pauli::y());
    EXPECT_NEAR(pr.lambda_plus, 1.0, 1e-15);
    EXPECT_NEAR(pr.lambda_minus, -1.0, 1e-15);
    EXPECT_NEAR(fidelity(pr.eigenstate(1), PureState::plus_y()), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(pr.eigenstate(-1), PureState::minus_y()), 1.0, 1e-15);
    expect_projector_algebra(pr);
}

TEST(MeasureProjectors, SigmaZ) {
    const Projectors pr = measure_projectors(pauli::z());
    EXPECT_NEAR(fidelity(pr.eigenstate(1), PureState::one()), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(pr.eigenstate(-1), PureState::two()), 1.0, 1e-15);
    expect_projector_algebra(pr);
}

TEST(MeasureProjectors, ShiftedObservableKeepsEigenbasis) {
    const Projectors a = measure_projectors(pauli::y());
    const Projectors b = measure_projectors(pauli::y() + 3.0 * pauli::identity());
    EXPECT_LT((a.plus - b.plus).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((a.minus - b.minus).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(b.lambda_plus, 4.0, 1e-12);
    EXPECT_NEAR(b.lambda_minus, 2.0, 1e-12);
}

TEST(MeasureProjectors, RandomHermitianObservables) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n;
    for (int i = 0; i < 100; ++i) {
        Operator2 a;
        a << n(rng), cplx(n(rng), n(rng)), 0.0, n(rng);
        a(1, 0) = std::conj(a(0, 1));
        const Projectors pr = measure_projectors(a);
        expect_projector_algebra(pr);
        const Operator2 rebuilt = pr.lambda_plus * pr.plus + pr.lambda_minus * pr.minus;
        EXPECT_LT((rebuilt - a).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(MeasureProjectors, Errors) {
    EXPECT_THROW(measure_projectors(2.0 * pauli::identity()), DegeneracyError);
    Operator2 non_hermitian;
    non_hermitian << 0.0, 1.0, 0.0, 0.0;
    EXPECT_THROW(measure_projectors(non_hermitian), ParameterError);
}

TEST(PureState, NormalizeAndVanishingNorm) {
    const PureState s = PureState(cplx(3.0), cplx(0.0, 4.0)).normalized();
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
    EXPECT_THROW(PureState(cplx(0.0), cplx(0.0)).normalized(), VanishingNormError);
}

} // namespace
} // namespace ptqtc
