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

#ifndef OAQEC_MATCORE_HPP
#define OAQEC_MATCORE_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace oaqec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Residual threshold used for every numerical rank or equality decision.
/// Singular values below `eps * sigma_max` count as zero.
class Tolerance {
  public:
    Tolerance() = default;
    explicit Tolerance(double eps);

    double eps() const { return eps_; }

  private:
    double eps_ = 1e-9;
};

/// Tr(a^dagger b).
Complex hs_inner(const Matrix& a, const Matrix& b);

double frobenius(const Matrix& a);
double spectral_norm(const Matrix& a);
bool all_finite(const Matrix& a);

// Vectorization stacks columns: vec(A X B) = (B^T kron A) vec(X).
Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix identity(Eigen::Index d);

/// Partial trace over the first factor of C^{da} (x) C^{db}.
Matrix partial_trace_first(const Matrix& m, Eigen::Index da, Eigen::Index db);
/// Partial trace over the second factor of C^{da} (x) C^{db}.
Matrix partial_trace_second(const Matrix& m, Eigen::Index da, Eigen::Index db);

bool is_hermitian(const Matrix& a, const Tolerance& tol);
/// max |v^dagger v - I|, the isometry defect of `v`.
double isometry_defect(const Matrix& v);

/// HS-orthonormal list of equally shaped matrices.
class OperatorBasis {
  public:
    OperatorBasis(Eigen::Index rows, Eigen::Index cols) : rows_(rows), cols_(cols) {}

    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const Matrix& operator[](std::size_t i) const { return elems_[i]; }
    const std::vector<Matrix>& elements() const { return elems_; }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    /// Orthogonal projection of `x` onto the span.
    Matrix project(const Matrix& x) const;
    /// Frobenius norm of the component of `x` orthogonal to the span.
    double residual(const Matrix& x) const;

    /// Gram-Schmidt step: appends the normalized orthogonal component of `x`
    /// when it exceeds `tol.eps() * ||x||`. Returns whether it was appended.
    bool extend(const Matrix& x, const Tolerance& tol);

    /// Appends an element that is already normalized and orthogonal to the
    /// current span. Shape is checked, orthogonality is not.
    void push_orthonormal(Matrix x);

  private:
    Eigen::Index rows_;
    Eigen::Index cols_;
    std::vector<Matrix> elems_;
};

/// Orthonormal basis of span(mats). The numerical rank follows the relative
/// singular value rule, so dependent inputs are dropped.
OperatorBasis orthonormalize(std::span<const Matrix> mats, const Tolerance& tol);

/// Largest residual of either basis measured against the other's span.
double mutual_containment(const OperatorBasis& a, const OperatorBasis& b);

struct Svd {
    Eigen::VectorXd values;  // non-increasing
    Matrix u;                // thin, when requested
    Matrix v;                // full, when requested
};

/// Singular value decomposition. Divide and conquer first; a result that
/// fails a consistency check (Eigen 3.4.0 can return NaN vectors on highly
/// structured input) is recomputed with one-sided Jacobi.
Svd svd(const Matrix& a, bool want_u, bool want_v);

/// Orthonormal vectors spanning the numerical kernel of `l`.
std::vector<Vector> nullspace(const Matrix& l, const Tolerance& tol);

/// Same as `nullspace` but returns the vectors as the columns of a matrix.
Matrix nullspace_matrix(const Matrix& l, const Tolerance& tol);

/// Orthonormal columns spanning the range of `a` (relative rank rule).
Matrix range_basis(const Matrix& a, const Tolerance& tol);

/// Numerical rank of `a` (relative rank rule).
Eigen::Index numerical_rank(const Matrix& a, const Tolerance& tol);

/// K with K a K equal to the projector onto the eigenspaces of `a` whose
/// eigenvalue exceeds eps * lambda_max. K vanishes on the kernel.
/// Throws DomainError unless `a` is Hermitian PSD within eps.
Matrix inv_sqrt_on_support(const Matrix& a, const Tolerance& tol);

/// Projector onto the support of a Hermitian PSD matrix.
Matrix support_projector(const Matrix& a, const Tolerance& tol);

/// Orthonormal columns spanning the kernel of an orthogonal projector.
/// Eigenvalues below 1/2 count as zero, so rounding in p never leaks in.
Matrix projector_complement(const Matrix& p);

/// Matrix exponential (scaling and squaring with Pade approximants).
Matrix expm(const Matrix& a);

}  // namespace oaqec

#endif
