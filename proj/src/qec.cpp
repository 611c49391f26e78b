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

#include "oaqec/qec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oaqec/errors.hpp"

namespace oaqec {

namespace {

void require_isometry(const Matrix& v, Eigen::Index rows, const Tolerance& tol, const char* what) {
    if (v.rows() != rows) throw DimensionError(std::string(what) + ": isometry has wrong number of rows");
    if (v.cols() == 0 || isometry_defect(v) > tol.eps()) throw DomainError(std::string(what) + ": v is not an isometry");
}

std::vector<Matrix> pair_products(const KrausChannel& ch) {
    std::vector<Matrix> out;
    out.reserve(ch.size() * ch.size());
    for (const auto& ei : ch.kraus()) {
        for (const auto& ej : ch.kraus()) out.push_back(ei.adjoint() * ej);
    }
    return out;
}

}  // namespace

VnAlgebra correctable_algebra(const KrausChannel& noise, const Tolerance& tol) {
    const std::vector<Matrix> products = pair_products(noise);
    const OperatorBasis span = orthonormalize(products, tol);
    return commutant(span.elements(), noise.d_in(), tol);
}

VnAlgebra noiseless_algebra(const KrausChannel& noise, const Tolerance& tol) {
    if (noise.d_in() != noise.d_out()) throw DomainError("noiseless_algebra: channel must have equal input and output dimension");
    return commutant(noise.kraus(), noise.d_in(), tol);
}

std::vector<double> geometric_weights(std::size_t count) {
    std::vector<double> w(count);
    for (std::size_t i = 0; i < count; ++i) w[i] = std::ldexp(1.0, -static_cast<int>(i));
    return w;
}

Matrix weighted_output_effect(const KrausChannel& noise, const std::vector<double>& lambda_weights) {
    if (lambda_weights.size() != noise.size()) throw DimensionError("weights must match the Kraus count");
    Matrix s = Matrix::Zero(noise.d_out(), noise.d_out());
    for (std::size_t i = 0; i < noise.size(); ++i) s += lambda_weights[i] * noise[i] * noise[i].adjoint();
    return s;
}

Matrix output_support(const KrausChannel& noise, const Tolerance& tol) {
    return support_projector(weighted_output_effect(noise, std::vector<double>(noise.size(), 1.0)), tol);
}

KrausChannel correction_channel(const KrausChannel& noise, const std::vector<double>& lambda_weights,
                                const Tolerance& tol) {
    std::vector<double> w = lambda_weights.empty() ? std::vector<double>(noise.size(), 1.0) : lambda_weights;
    if (w.size() != noise.size()) throw DimensionError("correction_channel: weights must match the Kraus count");
    for (double x : w) {
        if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("correction_channel: weights must be positive");
    }
    const Matrix effect = weighted_output_effect(noise, w);
    const Matrix k = inv_sqrt_on_support(effect, tol);
    std::vector<Matrix> ks;
    ks.reserve(noise.size());
    for (std::size_t i = 0; i < noise.size(); ++i) ks.push_back(std::sqrt(w[i]) * noise[i].adjoint() * k);

    const Matrix outside = projector_complement(support_projector(effect, tol));
    for (Eigen::Index j = 0; j < outside.cols(); ++j) {
        Matrix f = Matrix::Zero(noise.d_in(), noise.d_out());
        f.row(0) = outside.col(j).adjoint();
        ks.push_back(std::move(f));
    }
    return KrausChannel(noise.d_out(), noise.d_in(), std::move(ks));
}

CorrectionPackage make_correction_package(const KrausChannel& noise, const std::vector<double>& lambda_weights,
                                          const Tolerance& tol) {
    std::vector<double> w = lambda_weights.empty() ? std::vector<double>(noise.size(), 1.0) : lambda_weights;
    VnAlgebra alg = correctable_algebra(noise, tol);
    KrausChannel r = correction_channel(noise, w, tol);
    Matrix s = output_support(noise, tol);
    return CorrectionPackage{noise, std::move(alg), std::move(r), std::move(w), std::move(s)};
}

double verify_fixed(const KrausChannel& noise, const VnAlgebra& alg) {
    if (noise.d_in() != noise.d_out()) throw DomainError("verify_fixed: channel must have equal input and output dimension");
    if (alg.dim_h() != noise.d_in()) throw DimensionError("verify_fixed: algebra dimension mismatch");
    double worst = 0.0;
    for (const auto& a : alg.basis()) worst = std::max(worst, (apply_dual(noise, a) - a).norm());
    return worst;
}

double verify_correction(const KrausChannel& noise, const KrausChannel& correction, const VnAlgebra& alg) {
    if (correction.d_in() != noise.d_out() || correction.d_out() != noise.d_in()) {
        throw DimensionError("verify_correction: correction does not map the noise output back to its input");
    }
    if (alg.dim_h() != noise.d_in()) throw DimensionError("verify_correction: algebra dimension mismatch");
    double worst = 0.0;
    for (const auto& a : alg.basis()) {
        worst = std::max(worst, (apply_dual(noise, apply_dual(correction, a)) - a).norm());
    }
    return worst;
}

double intertwining_residual(const KrausChannel& noise, const KrausChannel& correction, const Matrix& p) {
    const Matrix b = apply_dual(correction, p);
    double worst = 0.0;
    for (const auto& e : noise.kraus()) worst = std::max(worst, (b * e - e * p).norm());
    return worst;
}

HomomorphismReport homomorphism_residual(const CorrectionPackage& package) {
    const auto& basis = package.correctable.basis();
    std::vector<Matrix> pre;
    std::vector<Matrix> image;
    pre.reserve(basis.size());
    image.reserve(basis.size());
    for (const auto& a : basis) {
        pre.push_back(apply_dual(package.correction, a));
        image.push_back(apply_dual(package.noise, pre.back()));
    }
    const Matrix& s = package.support;
    HomomorphismReport rep{0.0, 0.0};
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const Matrix bb = pre[i] * pre[j];
            rep.homomorphism = std::max(rep.homomorphism, (apply_dual(package.noise, bb) - image[i] * image[j]).norm());
            const Matrix direct = apply_dual(package.correction, Matrix(basis[i] * basis[j]));
            rep.faithful = std::max(rep.faithful, (s * (bb - direct) * s).norm());
        }
    }
    return rep;
}

RestrictedCode restricted_code(const KrausChannel& noise, const Matrix& v, const Tolerance& tol) {
    require_isometry(v, noise.d_in(), tol, "restricted_code");
    const KrausChannel e0 = restrict(noise, v, tol);
    VnAlgebra a0 = correctable_algebra(e0, tol);
    KrausChannel r0 = correction_channel(e0, {}, tol);

    std::vector<Matrix> images;
    images.reserve(a0.dim());
    for (const auto& a : a0.basis()) images.push_back(apply_dual(noise, apply_dual(r0, a)));
    OperatorBasis s0 = images.empty() ? OperatorBasis(noise.d_in(), noise.d_in()) : orthonormalize(images, tol);

    std::vector<Matrix> compressed;
    for (const auto& s : s0) compressed.push_back(v.adjoint() * s * v);
    const OperatorBasis cb = compressed.empty() ? OperatorBasis(v.cols(), v.cols()) : orthonormalize(compressed, tol);
    const double compression = mutual_containment(cb, a0.basis());

    double simultaneous = 0.0;
    double herm = 0.0;
    double prod = 0.0;
    for (const auto& s : s0) {
        const Matrix back = apply_dual(noise, apply_dual(r0, Matrix(v.adjoint() * s * v)));
        simultaneous = std::max(simultaneous, (back - s).norm());
        herm = std::max(herm, s0.residual(s.adjoint()));
        for (const auto& t : s0) prod = std::max(prod, s0.residual(s * t));
    }
    return RestrictedCode{v, std::move(a0), std::move(r0), std::move(s0), compression, simultaneous, herm, prod};
}

KlReport check_kl(const Matrix& v, const KrausChannel& noise, const Tolerance& tol) {
    require_isometry(v, noise.d_in(), tol, "check_kl");
    const auto n = static_cast<Eigen::Index>(noise.size());
    const Eigen::Index d0 = v.cols();
    KlReport rep{Matrix(n, n), 0.0, false};
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Matrix m = v.adjoint() * noise[static_cast<std::size_t>(i)].adjoint() *
                             noise[static_cast<std::size_t>(j)] * v;
            rep.lambda(i, j) = m.trace() / static_cast<double>(d0);
            rep.residual = std::max(rep.residual, (m - rep.lambda(i, j) * identity(d0)).norm());
        }
    }
    rep.passed = rep.residual <= tol.eps();
    return rep;
}

SubsystemReport check_subsystem(const Matrix& v, Eigen::Index d_a, Eigen::Index d_b, const KrausChannel& noise,
                                const Tolerance& tol) {
    require_isometry(v, noise.d_in(), tol, "check_subsystem");
    if (d_a <= 0 || d_b <= 0 || v.cols() != d_a * d_b) {
        throw DimensionError("check_subsystem: code dimension is not d_a * d_b");
    }
    SubsystemReport rep{{}, noise.size(), 0.0, false, -1.0};
    const Matrix ia = identity(d_a);
    for (const auto& ei : noise.kraus()) {
        for (const auto& ej : noise.kraus()) {
            const Matrix m = v.adjoint() * ei.adjoint() * ej * v;
            Matrix lam = partial_trace_first(m, d_a, d_b) / static_cast<double>(d_a);
            rep.residual = std::max(rep.residual, (m - kron(ia, lam)).norm());
            rep.lambda.push_back(std::move(lam));
        }
    }
    rep.passed = rep.residual <= tol.eps();
    if (rep.passed) {
        const VnAlgebra alg = correctable_algebra(restrict(noise, v, tol), tol);
        const Matrix ib = identity(d_b) / std::sqrt(static_cast<double>(d_b));
        double worst = 0.0;
        for (Eigen::Index a = 0; a < d_a; ++a) {
            for (Eigen::Index b = 0; b < d_a; ++b) {
                Matrix e = Matrix::Zero(d_a, d_a);
                e(a, b) = 1.0;
                worst = std::max(worst, contains(alg, kron(e, ib), tol).residual);
            }
        }
        rep.containment_residual = worst;
    }
    return rep;
}

RestrictedNoiseless check_restricted_noiseless(const Matrix& v, const KrausChannel& noise, const Tolerance& tol) {
    if (noise.d_in() != noise.d_out()) {
        throw DomainError("check_restricted_noiseless: channel must have equal input and output dimension");
    }
    require_isometry(v, noise.d_in(), tol, "check_restricted_noiseless");
    const Eigen::Index d = noise.d_in();
    const Eigen::Index d0 = v.cols();
    const Matrix id0 = identity(d0);

    // vec(V A G_k - E_k V A) = (G_k^T (x) V - 1 (x) E_k V) vec(A), G_k = V^dagger E_k V.
    const auto nk = static_cast<Eigen::Index>(noise.size());
    Matrix l(nk * d * d0, d0 * d0);
    for (Eigen::Index k = 0; k < nk; ++k) {
        const Matrix ev = noise[static_cast<std::size_t>(k)] * v;
        const Matrix g = v.adjoint() * ev;
        l.middleRows(k * d * d0, d * d0) = kron(g.transpose(), v) - kron(id0, ev);
    }
    const Matrix ns = nullspace_matrix(l, tol);
    OperatorBasis sol(d0, d0);
    OperatorBasis sol_adj(d0, d0);
    for (Eigen::Index c = 0; c < ns.cols(); ++c) {
        const Matrix a = unvec(ns.col(c), d0, d0);
        sol.push_orthonormal(a);
        sol_adj.push_orthonormal(a.adjoint());
    }
    VnAlgebra alg = VnAlgebra::from_basis(d0, intersect(sol, sol_adj, tol), tol);

    double worst = 0.0;
    for (const auto& a : alg.basis()) {
        for (const auto& e : noise.kraus()) {
            worst = std::max(worst, (v * a * v.adjoint() * e * v - e * v * a).norm());
        }
    }
    return RestrictedNoiseless{std::move(alg), worst};
}

RemixReport remix_robustness(const KrausChannel& noise, const Matrix& gamma, const Tolerance& tol) {
    KrausChannel remixed = remix(noise, gamma);
    const ValidationReport val = validate(remixed, tol);
    if (val.tp_residual > tol.eps()) throw DomainError("remix_robustness: mixed Kraus operators are not trace preserving");

    const VnAlgebra original = correctable_algebra(noise, tol);
    const VnAlgebra mixed = correctable_algebra(remixed, tol);
    const KrausChannel r = correction_channel(noise, {}, tol);
    const KrausChannel r_mixed = correction_channel(remixed, {}, tol);

    RemixReport rep{remixed,
                    val.tp_residual,
                    mutual_containment(original, mixed),
                    verify_correction(remixed, r, original),
                    choi_distance(noise, remixed),
                    choi_distance(r, r_mixed),
                    false};
    rep.passed = rep.algebra_residual <= tol.eps() && rep.correction_residual <= tol.eps();
    return rep;
}

}  // namespace oaqec
