// Copyright 2026 The oaqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <numbers>

#include "oaqec/errors.hpp"
#include "oaqec/matcore.hpp"
#include "oaqec/random.hpp"
#include "test_util.hpp"

namespace oaqec {
namespace {

using testing::diag;
using testing::pauli_x;
using testing::pauli_y;
using testing::pauli_z;

TEST(Tolerance, RejectsNonPositive) {
    EXPECT_THROW(Tolerance(0.0), DomainError);
    EXPECT_THROW(Tolerance(-1e-3), DomainError);
    EXPECT_THROW(Tolerance(std::nan("")), DomainError);
    EXPECT_DOUBLE_EQ(Tolerance().eps(), 1e-9);
}

TEST(HsInner, Examples) {
    EXPECT_NEAR(std::abs(hs_inner(identity(2), identity(2)) - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(hs_inner(identity(2), pauli_x())), 0.0, 1e-15);
    Matrix a(2, 2);
    a << 1, 2, 3, 4;
    // 1 + 4 + 9 + 16
    EXPECT_NEAR(std::abs(hs_inner(a, a) - 30.0), 0.0, 1e-12);
    EXPECT_THROW(hs_inner(identity(2), identity(3)), DimensionError);
}

TEST(HsInner, ConjugateLinearInFirstSlot) {
    Rng rng(3);
    const Matrix a = rng.ginibre(3, 3);
    const Matrix b = rng.ginibre(3, 3);
    const Complex c(0.3, -1.7);
    EXPECT_NEAR(std::abs(hs_inner(c * a, b) - std::conj(c) * hs_inner(a, b)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(hs_inner(a, b) - (a.adjoint() * b).trace()), 0.0, 1e-12);
}

TEST(Vec, ColumnStackingIdentity) {
    Rng rng(5);
    const Matrix a = rng.ginibre(3, 2);
    const Matrix x = rng.ginibre(2, 4);
    const Matrix b = rng.ginibre(4, 3);
    const Vector lhs = vec(a * x * b);
    const Vector rhs = kron(b.transpose(), a) * vec(x);
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
    EXPECT_LT((unvec(vec(x), 2, 4) - x).norm(), 0.0 + 1e-15);
}

TEST(PartialTrace, ProductStates) {
    Rng rng(9);
    const Matrix a = rng.hermitian(2);
    const Matrix b = rng.hermitian(3);
    const Matrix ab = kron(a, b);
    EXPECT_LT((partial_trace_first(ab, 2, 3) - a.trace() * b).norm(), 1e-12);
    EXPECT_LT((partial_trace_second(ab, 2, 3) - b.trace() * a).norm(), 1e-12);
    EXPECT_THROW(partial_trace_first(ab, 2, 2), DimensionError);
}

TEST(Orthonormalize, Examples) {
    const Tolerance tol;
    std::vector<Matrix> dep{identity(2), 2.0 * identity(2)};
    EXPECT_EQ(orthonormalize(dep, tol).size(), 1u);

    std::vector<Matrix> two{identity(2), pauli_x()};
    const OperatorBasis b = orthonormalize(two, tol);
    ASSERT_EQ(b.size(), 2u);
    EXPECT_NEAR(std::abs(hs_inner(b[0], b[1])), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(hs_inner(b[0], b[0]) - 1.0), 0.0, 1e-14);

    Rng rng(11);
    std::vector<Matrix> many;
    for (int i = 0; i < 16; ++i) many.push_back(rng.ginibre(2, 2));
    EXPECT_EQ(orthonormalize(many, tol).size(), 4u);

    EXPECT_TRUE(orthonormalize(std::vector<Matrix>{}, tol).empty());
}

TEST(Orthonormalize, SpanRankMatchesRankOracle) {
    // Span of 5 random products of 3 fixed 3x3 matrices, checked against the
    // rank of the stacked vectorisations computed with a column-pivoting QR.
    const Tolerance tol;
    Rng rng(12);
    std::vector<Matrix> mats;
    const Matrix a = rng.ginibre(3, 3);
    const Matrix b = rng.ginibre(3, 3);
    for (int i = 0; i < 4; ++i) mats.push_back(rng.normal() * a + rng.normal() * b);
    mats.push_back(a * b);
    Matrix stacked(9, 5);
    for (int i = 0; i < 5; ++i) stacked.col(i) = vec(mats[static_cast<std::size_t>(i)]);
    Eigen::ColPivHouseholderQR<Matrix> qr(stacked);
    qr.setThreshold(1e-10);
    EXPECT_EQ(static_cast<Eigen::Index>(orthonormalize(mats, tol).size()), qr.rank());
}

TEST(OperatorBasis, ExtendAndResidual) {
    const Tolerance tol;
    OperatorBasis b(2, 2);
    EXPECT_TRUE(b.extend(identity(2), tol));
    EXPECT_FALSE(b.extend(3.0 * identity(2), tol));
    EXPECT_TRUE(b.extend(pauli_z(), tol));
    EXPECT_NEAR(b.residual(diag({5, -1})), 0.0, 1e-14);
    // sigma_x is orthogonal to span{I, sigma_z}: residual is its norm.
    EXPECT_NEAR(b.residual(pauli_x()), std::sqrt(2.0), 1e-14);
}

TEST(Nullspace, Examples) {
    const Tolerance tol;
    EXPECT_EQ(nullspace(Matrix::Zero(3, 3), tol).size(), 3u);
    EXPECT_EQ(nullspace(identity(3), tol).size(), 0u);
    Matrix r(2, 2);
    r << 1, 1, 1, 1;
    const auto ns = nullspace(r, tol);
    ASSERT_EQ(ns.size(), 1u);
    Vector expect(2);
    expect << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    // Up to a phase.
    EXPECT_NEAR(std::abs(expect.dot(ns[0])), 1.0, 1e-14);
}

TEST(Nullspace, RelativeRule) {
    const Tolerance tol(1e-6);
    // Singular values 1e6 and 0.5: 0.5 <= 1e-6 * 1e6, so both directions
    // below the relative cut count as kernel.
    EXPECT_EQ(nullspace(diag({1e6, 0.5}), tol).size(), 1u);
    EXPECT_EQ(nullspace(diag({1e6, 2.0}), tol).size(), 0u);
}

TEST(Svd, StructuredInputStaysFinite) {
    // Stack of an orthonormal family next to its own negative: rank exactly
    // half. Eigen 3.4.0 divide and conquer returns NaN vectors here.
    std::vector<Matrix> fam;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int c = 0; c < 2; ++c) {
                Matrix x = kron(kron(a ? pauli_x() : identity(2), b ? pauli_x() : identity(2)),
                                c ? pauli_x() : identity(2));
                fam.push_back(x / std::sqrt(8.0));
            }
        }
    }
    Matrix m(64, 16);
    for (int i = 0; i < 8; ++i) {
        m.col(i) = vec(fam[static_cast<std::size_t>(i)]);
        m.col(8 + i) = -vec(fam[static_cast<std::size_t>((i * 5) % 8)]);
    }
    const Svd s = svd(m, true, true);
    EXPECT_TRUE(s.v.allFinite());
    EXPECT_TRUE(s.u.allFinite());
    EXPECT_EQ(nullspace_matrix(m, Tolerance()).cols(), 8);
    for (Eigen::Index j = 0; j < 8; ++j) EXPECT_NEAR(s.values(j), std::sqrt(2.0), 1e-12);
}

TEST(InvSqrtOnSupport, Examples) {
    const Tolerance tol;
    EXPECT_LT((inv_sqrt_on_support(identity(3), tol) - identity(3)).norm(), 1e-14);
    EXPECT_LT((inv_sqrt_on_support(diag({4, 0}), tol) - diag({0.5, 0})).norm(), 1e-14);
    EXPECT_LT((inv_sqrt_on_support(diag({0.25, 0.75}), tol) - diag({2.0, 2.0 / std::sqrt(3.0)})).norm(), 1e-13);
    EXPECT_THROW(inv_sqrt_on_support(diag({1, -1}), tol), DomainError);
    EXPECT_THROW(inv_sqrt_on_support(pauli_x() * Complex(0, 1), tol), DomainError);
}

TEST(InvSqrtOnSupport, PseudoInverseSquareRoot) {
    const Tolerance tol;
    Rng rng(21);
    const Matrix g = rng.ginibre(5, 3);
    const Matrix a = g * g.adjoint();  // rank 3
    const Matrix k = inv_sqrt_on_support(a, tol);
    const Matrix p = support_projector(a, tol);
    EXPECT_LT((k * a * k - p).norm(), 1e-10);
    EXPECT_NEAR(p.trace().real(), 3.0, 1e-12);
    EXPECT_EQ(projector_complement(p).cols(), 2);
}

TEST(Expm, Examples) {
    EXPECT_LT((expm(Matrix::Zero(3, 3)) - identity(3)).norm(), 1e-15);
    const Matrix a = Complex(0, std::numbers::pi / 2) * pauli_x();
    // cos(pi/2) I + i sin(pi/2) sigma_x
    EXPECT_LT((expm(a) - Complex(0, 1) * pauli_x()).norm(), 1e-14);
    const Matrix e = expm(diag({0.3, -2.0}));
    EXPECT_NEAR(e(0, 0).real(), std::exp(0.3), 1e-14);
    EXPECT_NEAR(e(1, 1).real(), std::exp(-2.0), 1e-15);
    EXPECT_THROW(expm(Matrix::Zero(2, 3)), DimensionError);
}

TEST(Expm, UnitaryForHermitianGenerator) {
    Rng rng(4);
    const Matrix h = rng.hermitian(6);
    const Matrix u = expm(Complex(0, -0.7) * h);
    EXPECT_LT(isometry_defect(u), 1e-12);
}

TEST(IsHermitian, Basic) {
    const Tolerance tol;
    EXPECT_TRUE(is_hermitian(pauli_y(), tol));
    EXPECT_FALSE(is_hermitian(Complex(0, 1) * pauli_y(), tol));
    EXPECT_FALSE(is_hermitian(Matrix::Zero(2, 3), tol));
}

TEST(Random, Reproducible) {
    Rng a(42);
    Rng b(42);
    EXPECT_EQ((a.unitary(4) - b.unitary(4)).norm(), 0.0);
    Rng c(42);
    EXPECT_LT(isometry_defect(c.unitary(5)), 1e-13);
    EXPECT_LT(isometry_defect(c.isometry(6, 3)), 1e-13);
    for (int i = 0; i < 100; ++i) {
        const int k = c.uniform_int(2, 5);
        EXPECT_GE(k, 2);
        EXPECT_LE(k, 5);
    }
}

}  // namespace
}  // namespace oaqec
