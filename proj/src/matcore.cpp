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

#include "oaqec/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "oaqec/errors.hpp"

namespace oaqec {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
    }
}

Eigen::Index rank_from_singular_values(const Eigen::VectorXd& s, const Tolerance& tol) {
    if (s.size() == 0) return 0;
    const double smax = s.maxCoeff();
    if (!(smax > 0.0)) return 0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > tol.eps() * smax) ++r;
    }
    return r;
}

}  // namespace

Tolerance::Tolerance(double eps) : eps_(eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw DomainError("tolerance must be a positive finite number");
    }
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b, "hs_inner");
    return (a.adjoint() * b).trace();
}

double frobenius(const Matrix& a) { return a.norm(); }

double spectral_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

bool all_finite(const Matrix& a) { return a.allFinite(); }

Vector vec(const Matrix& a) { return Eigen::Map<const Vector>(a.data(), a.size()); }

Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) throw DimensionError("unvec: length does not match shape");
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

Matrix partial_trace_first(const Matrix& m, Eigen::Index da, Eigen::Index db) {
    if (m.rows() != da * db || m.cols() != da * db) throw DimensionError("partial_trace_first: bad factorization");
    Matrix out = Matrix::Zero(db, db);
    for (Eigen::Index a = 0; a < da; ++a) out += m.block(a * db, a * db, db, db);
    return out;
}

Matrix partial_trace_second(const Matrix& m, Eigen::Index da, Eigen::Index db) {
    if (m.rows() != da * db || m.cols() != da * db) throw DimensionError("partial_trace_second: bad factorization");
    Matrix out(da, da);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) out(i, j) = m.block(i * db, j * db, db, db).trace();
    }
    return out;
}

bool is_hermitian(const Matrix& a, const Tolerance& tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).norm() <= tol.eps() * std::max(1.0, a.norm());
}

double isometry_defect(const Matrix& v) {
    return spectral_norm(v.adjoint() * v - identity(v.cols()));
}

Matrix OperatorBasis::project(const Matrix& x) const {
    if (x.rows() != rows_ || x.cols() != cols_) throw DimensionError("OperatorBasis::project: shape mismatch");
    Matrix p = Matrix::Zero(rows_, cols_);
    for (const auto& b : elems_) p += hs_inner(b, x) * b;
    return p;
}

double OperatorBasis::residual(const Matrix& x) const { return (x - project(x)).norm(); }

bool OperatorBasis::extend(const Matrix& x, const Tolerance& tol) {
    if (x.rows() != rows_ || x.cols() != cols_) throw DimensionError("OperatorBasis::extend: shape mismatch");
    const double scale = x.norm();
    if (scale == 0.0) return false;
    // Two passes of classical Gram-Schmidt keep the basis orthonormal to
    // machine precision.
    Matrix r = x - project(x);
    r -= project(r);
    const double rn = r.norm();
    if (rn <= tol.eps() * scale) return false;
    elems_.push_back(r / rn);
    return true;
}

void OperatorBasis::push_orthonormal(Matrix x) {
    if (x.rows() != rows_ || x.cols() != cols_) throw DimensionError("OperatorBasis::push_orthonormal: shape mismatch");
    elems_.push_back(std::move(x));
}

namespace {

bool svd_consistent(const Matrix& a, const Svd& r, bool want_u, bool want_v) {
    const Eigen::VectorXd& sv = r.values;
    if (!sv.allFinite()) return false;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) < 0.0 || (i > 0 && sv(i) > sv(i - 1) * (1.0 + 1e-12) + 1e-300)) return false;
    }
    const double scale = sv.size() ? std::max(sv(0), 1e-300) : 1.0;
    const double slack = 1e-10 * scale;
    if (want_v) {
        if (!r.v.allFinite()) return false;
        const Matrix av = a * r.v;
        for (Eigen::Index j = 0; j < av.cols(); ++j) {
            const double expect = j < sv.size() ? sv(j) : 0.0;
            if (std::abs(av.col(j).norm() - expect) > slack) return false;
        }
    }
    if (want_u) {
        if (!r.u.allFinite()) return false;
        const Matrix au = a.adjoint() * r.u;
        for (Eigen::Index j = 0; j < au.cols(); ++j) {
            if (std::abs(au.col(j).norm() - sv(j)) > slack) return false;
        }
    }
    return true;
}

template <typename Solver>
Svd unpack(const Solver& s, bool want_u, bool want_v) {
    Svd r;
    r.values = s.singularValues();
    if (want_u) r.u = s.matrixU();
    if (want_v) r.v = s.matrixV();
    return r;
}

}  // namespace

Svd svd(const Matrix& a, bool want_u, bool want_v) {
    const unsigned opts = (want_u ? static_cast<unsigned>(Eigen::ComputeThinU) : 0u) |
                          (want_v ? static_cast<unsigned>(Eigen::ComputeFullV) : 0u);
    Svd r = unpack(Eigen::BDCSVD<Matrix>(a, opts), want_u, want_v);
    if (svd_consistent(a, r, want_u, want_v)) return r;
    return unpack(Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner>(a, opts), want_u, want_v);
}

OperatorBasis orthonormalize(std::span<const Matrix> mats, const Tolerance& tol) {
    if (mats.empty()) return OperatorBasis(0, 0);
    const Eigen::Index rows = mats[0].rows();
    const Eigen::Index cols = mats[0].cols();
    for (const auto& m : mats) require_same_shape(mats[0], m, "orthonormalize");

    const auto n = static_cast<Eigen::Index>(mats.size());
    Matrix stacked(rows * cols, n);
    for (Eigen::Index j = 0; j < n; ++j) stacked.col(j) = vec(mats[static_cast<std::size_t>(j)]);

    OperatorBasis out(rows, cols);
    const Svd dec = svd(stacked, true, false);
    const Eigen::Index r = rank_from_singular_values(dec.values, tol);
    for (Eigen::Index j = 0; j < r; ++j) out.push_orthonormal(unvec(dec.u.col(j), rows, cols));
    return out;
}

double mutual_containment(const OperatorBasis& a, const OperatorBasis& b) {
    if (a.empty() || b.empty()) return a.size() == b.size() ? 0.0 : 1.0;
    double worst = 0.0;
    for (const auto& x : a) worst = std::max(worst, b.residual(x));
    for (const auto& x : b) worst = std::max(worst, a.residual(x));
    return worst;
}

Matrix nullspace_matrix(const Matrix& l, const Tolerance& tol) {
    const Eigen::Index n = l.cols();
    if (n == 0) return Matrix(0, 0);
    if (l.rows() == 0) return identity(n);
    const Svd dec = svd(l, false, true);
    const Eigen::Index r = rank_from_singular_values(dec.values, tol);
    return dec.v.rightCols(n - r);
}

std::vector<Vector> nullspace(const Matrix& l, const Tolerance& tol) {
    const Matrix ns = nullspace_matrix(l, tol);
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(ns.cols()));
    for (Eigen::Index j = 0; j < ns.cols(); ++j) out.emplace_back(ns.col(j));
    return out;
}

Matrix range_basis(const Matrix& a, const Tolerance& tol) {
    if (a.size() == 0) return Matrix(a.rows(), 0);
    const Svd dec = svd(a, true, false);
    const Eigen::Index r = rank_from_singular_values(dec.values, tol);
    return dec.u.leftCols(r);
}

Eigen::Index numerical_rank(const Matrix& a, const Tolerance& tol) {
    if (a.size() == 0) return 0;
    return rank_from_singular_values(svd(a, false, false).values, tol);
}

namespace {

struct PsdSpectrum {
    Eigen::VectorXd values;
    Matrix vectors;
    double cutoff;
};

PsdSpectrum psd_spectrum(const Matrix& a, const Tolerance& tol, const char* what) {
    if (a.rows() != a.cols()) throw DimensionError(std::string(what) + ": matrix must be square");
    if (!is_hermitian(a, tol)) throw DomainError(std::string(what) + ": matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix((a + a.adjoint()) / 2.0));
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double lmax = ev.size() ? std::max(ev.cwiseAbs().maxCoeff(), 0.0) : 0.0;
    if (ev.size() && ev.minCoeff() < -tol.eps() * std::max(1.0, lmax)) {
        throw DomainError(std::string(what) + ": matrix is not positive semidefinite");
    }
    return {ev, es.eigenvectors(), tol.eps() * lmax};
}

}  // namespace

Matrix inv_sqrt_on_support(const Matrix& a, const Tolerance& tol) {
    const PsdSpectrum sp = psd_spectrum(a, tol, "inv_sqrt_on_support");
    Matrix k = Matrix::Zero(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < sp.values.size(); ++i) {
        if (sp.values(i) > sp.cutoff && sp.values(i) > 0.0) {
            k += (1.0 / std::sqrt(sp.values(i))) * sp.vectors.col(i) * sp.vectors.col(i).adjoint();
        }
    }
    return k;
}

Matrix support_projector(const Matrix& a, const Tolerance& tol) {
    const PsdSpectrum sp = psd_spectrum(a, tol, "support_projector");
    Matrix p = Matrix::Zero(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < sp.values.size(); ++i) {
        if (sp.values(i) > sp.cutoff && sp.values(i) > 0.0) p += sp.vectors.col(i) * sp.vectors.col(i).adjoint();
    }
    return p;
}

Matrix projector_complement(const Matrix& p) {
    if (p.rows() != p.cols()) throw DimensionError("projector_complement: matrix must be square");
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix((p + p.adjoint()) / 2.0));
    Eigen::Index k = 0;
    while (k < p.rows() && es.eigenvalues()(k) < 0.5) ++k;
    return es.eigenvectors().leftCols(k);
}

Matrix expm(const Matrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("expm: matrix must be square");
    return a.exp();
}

}  // namespace oaqec
