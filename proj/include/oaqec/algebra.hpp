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

#ifndef OAQEC_ALGEBRA_HPP
#define OAQEC_ALGEBRA_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "oaqec/matcore.hpp"

namespace oaqec {

/// Finite-dimensional *-algebra of operators on C^{dim_h}, stored as an
/// HS-orthonormal basis. `unit` is the identity of the algebra: the ambient
/// identity, or a projector for algebras living on a subspace.
class VnAlgebra {
  public:
    VnAlgebra(Eigen::Index dim_h, OperatorBasis basis, Matrix unit);

    /// Wraps a basis and recovers the unit as the support projector of
    /// sum_i A_i A_i^dagger. No closure check is performed.
    static VnAlgebra from_basis(Eigen::Index dim_h, OperatorBasis basis, const Tolerance& tol = {});
    static VnAlgebra full(Eigen::Index dim_h);
    static VnAlgebra scalars(Eigen::Index dim_h);

    Eigen::Index dim_h() const { return dim_h_; }
    std::size_t dim() const { return basis_.size(); }
    const OperatorBasis& basis() const { return basis_; }
    const Matrix& unit() const { return unit_; }

    /// Largest of: adjoint residual, product residual, unit-action defect.
    /// O(dim^2) products; meant for checks on small algebras.
    double closure_residual() const;

  private:
    Eigen::Index dim_h_;
    OperatorBasis basis_;
    Matrix unit_;
};

/// Hermitian, HS-orthonormal basis of the *-closure span{M, M^dagger}.
OperatorBasis hermitian_basis(std::span<const Matrix> mats, const Tolerance& tol = {});

/// {X : [X, M] = [X, M^dagger] = 0 for every generator M}. Empty input gives B(C^dim_h).
VnAlgebra commutant(std::span<const Matrix> gens, Eigen::Index dim_h, const Tolerance& tol = {});

/// Smallest unital *-algebra containing the generators.
VnAlgebra generated_algebra(std::span<const Matrix> gens, Eigen::Index dim_h, const Tolerance& tol = {});

/// Orthonormal basis of span(a) intersected with span(b).
OperatorBasis intersect(const OperatorBasis& a, const OperatorBasis& b, const Tolerance& tol = {});

/// A intersected with A'.
VnAlgebra center(const VnAlgebra& alg, const Tolerance& tol = {});

bool is_factor(const VnAlgebra& alg, const Tolerance& tol = {});

struct Containment {
    bool contained;
    double residual;  ///< ||x - proj(x)||_F
};

Containment contains(const VnAlgebra& alg, const Matrix& x, const Tolerance& tol = {});

/// Largest residual of either algebra's basis against the other's span.
double mutual_containment(const VnAlgebra& a, const VnAlgebra& b);

/// One summand M_n (x) 1_m of the block decomposition.
struct AlgebraBlock {
    Matrix projector;  ///< minimal central projection p_k
    int n;             ///< logical dimension
    int m;             ///< multiplicity
    /// Orthonormal columns spanning range(p_k), ordered (i, j) -> i*m + j so
    /// that compressed algebra elements read a (x) 1_m.
    Matrix frame;
};

struct AlgebraStructure {
    std::vector<AlgebraBlock> blocks;
    /// Unitary whose leading columns are the block frames in order, followed by
    /// an orthonormal basis of the kernel of the unit.
    Matrix change_of_basis;

    std::vector<std::pair<int, int>> pattern() const;
    int sum_n_squared() const;
    int sum_nm() const;
    int sum_m_squared() const;
};

/// Block decomposition A = (+)_k M_{n_k} (x) 1_{m_k}. Throws DegeneracyError
/// when no seed among `seed, seed+1, ..., seed+5` separates the spectrum.
AlgebraStructure structure(const VnAlgebra& alg, const Tolerance& tol = {}, std::uint64_t seed = 0);

}  // namespace oaqec

#endif
