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

#include "oaqec/channel.hpp"

#include <algorithm>
#include <string>

#include "oaqec/errors.hpp"

namespace oaqec {

KrausChannel::KrausChannel(Eigen::Index d_in, Eigen::Index d_out, std::vector<Matrix> kraus)
    : d_in_(d_in), d_out_(d_out), kraus_(std::move(kraus)) {
    if (d_in <= 0 || d_out <= 0) throw DimensionError("KrausChannel: dimensions must be positive");
    if (kraus_.empty()) throw DimensionError("KrausChannel: Kraus list is empty");
    for (std::size_t k = 0; k < kraus_.size(); ++k) {
        if (kraus_[k].rows() != d_out || kraus_[k].cols() != d_in) {
            throw DimensionError("KrausChannel: Kraus operator " + std::to_string(k) + " is " +
                                 std::to_string(kraus_[k].rows()) + "x" + std::to_string(kraus_[k].cols()) +
                                 ", expected " + std::to_string(d_out) + "x" + std::to_string(d_in));
        }
        if (!kraus_[k].allFinite()) throw DomainError("KrausChannel: non-finite entry");
    }
}

namespace {

// Read the shape before the list is moved into the delegated constructor.
std::pair<Eigen::Index, Eigen::Index> front_shape(const std::vector<Matrix>& kraus) {
    if (kraus.empty()) throw DimensionError("KrausChannel: Kraus list is empty");
    return {kraus.front().cols(), kraus.front().rows()};
}

}  // namespace

KrausChannel::KrausChannel(std::vector<Matrix> kraus) : KrausChannel(front_shape(kraus), std::move(kraus)) {}

KrausChannel::KrausChannel(std::pair<Eigen::Index, Eigen::Index> shape, std::vector<Matrix>&& kraus)
    : KrausChannel(shape.first, shape.second, std::move(kraus)) {}

KrausChannel KrausChannel::identity(Eigen::Index d) { return KrausChannel(d, d, {oaqec::identity(d)}); }

KrausChannel KrausChannel::unitary(const Matrix& u) { return KrausChannel(u.cols(), u.rows(), {u}); }

ValidationReport validate(const KrausChannel& ch, const Tolerance& tol) {
    Matrix s = Matrix::Zero(ch.d_in(), ch.d_in());
    for (const auto& e : ch.kraus()) s += e.adjoint() * e;
    const double tp = spectral_norm(s - identity(ch.d_in()));

    const Matrix c = choi(ch);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix((c + c.adjoint()) / 2.0), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
    const bool ok = tp <= tol.eps() && lmin >= -tol.eps() * std::max(1.0, lmax);
    return {tp, lmin, ok};
}

Matrix apply(const KrausChannel& ch, const Matrix& rho) {
    if (rho.rows() != ch.d_in() || rho.cols() != ch.d_in()) throw DimensionError("apply: state has wrong dimension");
    Matrix out = Matrix::Zero(ch.d_out(), ch.d_out());
    for (const auto& e : ch.kraus()) out += e * rho * e.adjoint();
    return out;
}

Matrix apply_dual(const KrausChannel& ch, const Matrix& a) {
    if (a.rows() != ch.d_out() || a.cols() != ch.d_out()) {
        throw DimensionError("apply_dual: operator has wrong dimension");
    }
    Matrix out = Matrix::Zero(ch.d_in(), ch.d_in());
    for (const auto& e : ch.kraus()) out += e.adjoint() * a * e;
    return out;
}

Matrix choi(const KrausChannel& ch) {
    const Eigen::Index din = ch.d_in();
    const Eigen::Index dout = ch.d_out();
    Matrix c = Matrix::Zero(din * dout, din * dout);
    Vector w(din * dout);
    for (const auto& e : ch.kraus()) {
        for (Eigen::Index i = 0; i < din; ++i) w.segment(i * dout, dout) = e.col(i);
        c += w * w.adjoint();
    }
    return c;
}

double choi_distance(const KrausChannel& a, const KrausChannel& b) {
    if (a.d_in() != b.d_in() || a.d_out() != b.d_out()) throw DimensionError("choi_distance: dimension mismatch");
    return (choi(a) - choi(b)).norm();
}

KrausChannel compose(const KrausChannel& ch2, const KrausChannel& ch1) {
    if (ch1.d_out() != ch2.d_in()) throw DimensionError("compose: ch1 output does not match ch2 input");
    std::vector<Matrix> ks;
    ks.reserve(ch1.size() * ch2.size());
    for (const auto& f : ch2.kraus()) {
        for (const auto& e : ch1.kraus()) ks.push_back(f * e);
    }
    return KrausChannel(ch1.d_in(), ch2.d_out(), std::move(ks));
}

KrausChannel restrict(const KrausChannel& ch, const Matrix& v, const Tolerance& tol) {
    if (v.rows() != ch.d_in()) throw DimensionError("restrict: isometry has wrong number of rows");
    if (isometry_defect(v) > tol.eps()) throw DomainError("restrict: v is not an isometry");
    std::vector<Matrix> ks;
    ks.reserve(ch.size());
    for (const auto& e : ch.kraus()) ks.push_back(e * v);
    return KrausChannel(v.cols(), ch.d_out(), std::move(ks));
}

KrausChannel compress(const KrausChannel& ch, const Tolerance& tol) {
    const Matrix c = choi(ch);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix((c + c.adjoint()) / 2.0));
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double lmax = ev.cwiseAbs().maxCoeff();
    const Eigen::Index din = ch.d_in();
    const Eigen::Index dout = ch.d_out();
    std::vector<Matrix> ks;
    // Descending eigenvalue order gives a deterministic Kraus order.
    for (Eigen::Index j = ev.size() - 1; j >= 0; --j) {
        if (!(ev(j) > tol.eps() * lmax)) continue;
        Matrix k(dout, din);
        const Vector w = std::sqrt(ev(j)) * es.eigenvectors().col(j);
        for (Eigen::Index i = 0; i < din; ++i) k.col(i) = w.segment(i * dout, dout);
        ks.push_back(std::move(k));
    }
    if (ks.empty()) ks.push_back(Matrix::Zero(dout, din));
    return KrausChannel(din, dout, std::move(ks));
}

KrausChannel remix(const KrausChannel& ch, const Matrix& gamma) {
    if (gamma.cols() != static_cast<Eigen::Index>(ch.size())) {
        throw DimensionError("remix: mixing matrix columns must equal the Kraus count");
    }
    std::vector<Matrix> ks;
    for (Eigen::Index i = 0; i < gamma.rows(); ++i) {
        Matrix f = Matrix::Zero(ch.d_out(), ch.d_in());
        for (Eigen::Index j = 0; j < gamma.cols(); ++j) f += gamma(i, j) * ch[static_cast<std::size_t>(j)];
        ks.push_back(std::move(f));
    }
    return KrausChannel(ch.d_in(), ch.d_out(), std::move(ks));
}

KrausChannel dilate_to_kraus(const DilationModel& dm, const std::optional<Matrix>& env_basis,
                             const Tolerance& tol) {
    const Eigen::Index ds = dm.d_sys;
    const Eigen::Index de = dm.d_env;
    if (ds <= 0 || de <= 0) throw DimensionError("dilate_to_kraus: factor dimensions must be positive");
    if (dm.h_total.rows() != ds * de || dm.h_total.cols() != ds * de) {
        throw DimensionError("dilate_to_kraus: Hamiltonian is not d_sys*d_env square");
    }
    if (dm.psi_env.size() != de) throw DimensionError("dilate_to_kraus: environment state has wrong length");
    if (!is_hermitian(dm.h_total, tol)) throw DomainError("dilate_to_kraus: Hamiltonian is not Hermitian");
    if (std::abs(dm.psi_env.norm() - 1.0) > tol.eps()) throw DomainError("dilate_to_kraus: environment state is not normalized");

    const Matrix basis = env_basis ? *env_basis : identity(de);
    if (basis.rows() != de || basis.cols() != de) throw DimensionError("dilate_to_kraus: environment basis must be d_env square");
    if (isometry_defect(basis) > tol.eps()) throw DomainError("dilate_to_kraus: environment basis is not orthonormal");

    const Matrix u = expm(Complex(0.0, -dm.t) * dm.h_total);
    const Matrix in = kron(identity(ds), Matrix(dm.psi_env));
    std::vector<Matrix> ks;
    ks.reserve(static_cast<std::size_t>(de));
    for (Eigen::Index k = 0; k < de; ++k) {
        const Matrix out = kron(identity(ds), Matrix(basis.col(k)));
        ks.push_back(out.adjoint() * u * in);
    }
    return KrausChannel(ds, ds, std::move(ks));
}

std::vector<Matrix> interaction_operators(const Matrix& h_total, Eigen::Index d_sys, Eigen::Index d_env,
                                          const Tolerance& tol) {
    if (h_total.rows() != d_sys * d_env || h_total.cols() != d_sys * d_env) {
        throw DimensionError("interaction_operators: Hamiltonian is not d_sys*d_env square");
    }
    // Realign so that a product J (x) K becomes the rank-one matrix vec(J) vec(K)^T.
    Matrix r(d_sys * d_sys, d_env * d_env);
    for (Eigen::Index s = 0; s < d_sys; ++s) {
        for (Eigen::Index sp = 0; sp < d_sys; ++sp) {
            for (Eigen::Index e = 0; e < d_env; ++e) {
                for (Eigen::Index ep = 0; ep < d_env; ++ep) {
                    r(s + d_sys * sp, e + d_env * ep) = h_total(s * d_env + e, sp * d_env + ep);
                }
            }
        }
    }
    const Svd dec = svd(r, true, false);
    const Eigen::VectorXd& sv = dec.values;
    std::vector<Matrix> out;
    if (sv.size() == 0 || !(sv(0) > 0.0)) return out;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > tol.eps() * sv(0)) out.push_back(sv(i) * unvec(dec.u.col(i), d_sys, d_sys));
    }
    return out;
}

namespace {

void check_square_family(std::span<const Matrix> ops, Eigen::Index d) {
    for (const auto& j : ops) {
        if (j.rows() != d || j.cols() != d) throw DimensionError("error_span: operators must share one square shape");
    }
}

}  // namespace

std::vector<std::size_t> error_span_dims(std::span<const Matrix> interaction_ops, int max_order,
                                         const Tolerance& tol) {
    if (max_order < 0) throw DomainError("error_span: order must be nonnegative");
    if (interaction_ops.empty()) return std::vector<std::size_t>(static_cast<std::size_t>(max_order) + 1, 0);
    const Eigen::Index d = interaction_ops.front().rows();
    check_square_family(interaction_ops, d);

    OperatorBasis total(d, d);
    total.extend(identity(d), tol);
    std::vector<std::size_t> dims{total.size()};

    // Span of products of exactly n factors is span{ J * B : B spans order n-1 }.
    std::vector<Matrix> level{identity(d)};
    for (int n = 1; n <= max_order; ++n) {
        std::vector<Matrix> next;
        next.reserve(level.size() * interaction_ops.size());
        for (const auto& j : interaction_ops) {
            for (const auto& b : level) next.push_back(j * b);
        }
        const OperatorBasis lb = orthonormalize(next, tol);
        level = lb.elements();
        for (const auto& b : level) total.extend(b, tol);
        dims.push_back(total.size());
    }
    return dims;
}

OperatorBasis error_span(std::span<const Matrix> interaction_ops, int order, const Tolerance& tol) {
    if (order < 0) throw DomainError("error_span: order must be nonnegative");
    if (interaction_ops.empty()) return OperatorBasis(0, 0);
    const Eigen::Index d = interaction_ops.front().rows();
    check_square_family(interaction_ops, d);

    std::vector<Matrix> all{identity(d)};
    std::vector<Matrix> level{identity(d)};
    for (int n = 1; n <= order; ++n) {
        std::vector<Matrix> next;
        for (const auto& j : interaction_ops) {
            for (const auto& b : level) next.push_back(j * b);
        }
        level = orthonormalize(next, tol).elements();
        all.insert(all.end(), level.begin(), level.end());
    }
    return orthonormalize(all, tol);
}

}  // namespace oaqec
