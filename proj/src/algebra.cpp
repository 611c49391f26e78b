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

#include "oaqec/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "oaqec/errors.hpp"
#include "oaqec/random.hpp"

namespace oaqec {

VnAlgebra::VnAlgebra(Eigen::Index dim_h, OperatorBasis basis, Matrix unit)
    : dim_h_(dim_h), basis_(basis.empty() ? OperatorBasis(dim_h, dim_h) : std::move(basis)), unit_(std::move(unit)) {
    if (basis_.rows() != dim_h || basis_.cols() != dim_h) throw DimensionError("VnAlgebra: basis shape mismatch");
    if (unit_.rows() != dim_h || unit_.cols() != dim_h) throw DimensionError("VnAlgebra: unit shape mismatch");
}

VnAlgebra VnAlgebra::from_basis(Eigen::Index dim_h, OperatorBasis basis, const Tolerance& tol) {
    Matrix s = Matrix::Zero(dim_h, dim_h);
    for (const auto& a : basis) s += a * a.adjoint();
    Matrix unit = basis.empty() ? Matrix::Zero(dim_h, dim_h) : support_projector(s, tol);
    return VnAlgebra(dim_h, std::move(basis), std::move(unit));
}

VnAlgebra VnAlgebra::full(Eigen::Index dim_h) {
    OperatorBasis b(dim_h, dim_h);
    for (Eigen::Index j = 0; j < dim_h; ++j) {
        for (Eigen::Index i = 0; i < dim_h; ++i) {
            Matrix e = Matrix::Zero(dim_h, dim_h);
            e(i, j) = 1.0;
            b.push_orthonormal(std::move(e));
        }
    }
    return VnAlgebra(dim_h, std::move(b), identity(dim_h));
}

VnAlgebra VnAlgebra::scalars(Eigen::Index dim_h) {
    OperatorBasis b(dim_h, dim_h);
    b.push_orthonormal(identity(dim_h) / std::sqrt(static_cast<double>(dim_h)));
    return VnAlgebra(dim_h, std::move(b), identity(dim_h));
}

double VnAlgebra::closure_residual() const {
    double worst = 0.0;
    for (const auto& a : basis_) {
        worst = std::max(worst, basis_.residual(a.adjoint()));
        worst = std::max(worst, (unit_ * a - a).norm());
        worst = std::max(worst, (a * unit_ - a).norm());
        for (const auto& b : basis_) worst = std::max(worst, basis_.residual(a * b));
    }
    if (!basis_.empty()) worst = std::max(worst, basis_.residual(unit_));
    return worst;
}

OperatorBasis hermitian_basis(std::span<const Matrix> mats, const Tolerance& tol) {
    if (mats.empty()) return OperatorBasis(0, 0);
    const Eigen::Index d = mats.front().rows();
    // Hermitian and anti-Hermitian parts, as real vectors [Re vec; Im vec].
    // Their real span is the Hermitian part of the complex span; the rank
    // comes from one SVD so cancellation in near-dependent inputs cannot
    // promote rounding noise to a basis element.
    std::vector<Matrix> parts;
    for (const auto& m : mats) {
        if (m.rows() != d || m.cols() != d) throw DimensionError("hermitian_basis: operators must share one square shape");
        parts.push_back((m + m.adjoint()) / 2.0);
        parts.push_back((m - m.adjoint()) / Complex(0.0, 2.0));
    }
    const Eigen::Index n = d * d;
    Eigen::MatrixXd real(2 * n, static_cast<Eigen::Index>(parts.size()));
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const Vector v = vec(parts[k]);
        real.col(static_cast<Eigen::Index>(k)) << v.real(), v.imag();
    }
    OperatorBasis out(d, d);
    if (real.norm() == 0.0) return out;
    const Eigen::JacobiSVD<Eigen::MatrixXd> dec(real, Eigen::ComputeThinU);
    const Eigen::VectorXd& sv = dec.singularValues();
    for (Eigen::Index j = 0; j < sv.size() && sv(j) > tol.eps() * sv(0); ++j) {
        const Eigen::VectorXd u = dec.matrixU().col(j);
        Vector c(n);
        c.real() = u.head(n);
        c.imag() = u.tail(n);
        Matrix h = unvec(c, d, d);
        out.push_orthonormal((h + h.adjoint()) / 2.0);
    }
    return out;
}

namespace {

void check_generators(std::span<const Matrix> gens, Eigen::Index d, const char* what) {
    if (d <= 0) throw DimensionError(std::string(what) + ": dimension must be positive");
    for (const auto& g : gens) {
        if (g.rows() != d || g.cols() != d) throw DimensionError(std::string(what) + ": generators must be dim_h square");
    }
}

// Upper-triangular factor R of [r; block], so that R^dagger R accumulates the
// Gram matrix without squaring the condition number.
Matrix qr_append(const Matrix& r, const Matrix& block) {
    Matrix stacked(r.rows() + block.rows(), block.cols());
    stacked << r, block;
    Eigen::HouseholderQR<Matrix> qr(stacked);
    const Eigen::Index k = std::min(stacked.rows(), stacked.cols());
    return qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
}

}  // namespace

VnAlgebra commutant(std::span<const Matrix> gens, Eigen::Index dim_h, const Tolerance& tol) {
    check_generators(gens, dim_h, "commutant");
    const Eigen::Index d = dim_h;
    const Eigen::Index n = d * d;
    const Matrix id = identity(d);

    // Scalar parts commute with everything; dropping them keeps the Gram
    // matrix free of cancellation noise.
    std::vector<Matrix> herm;
    for (const auto& h : hermitian_basis(gens, tol)) {
        Matrix t = h - (h.trace() / static_cast<double>(d)) * id;
        if (t.norm() > tol.eps()) herm.push_back(std::move(t));
    }
    if (herm.empty()) return VnAlgebra::full(d);

    // The commutation constraints form the stacked system L with blocks
    // L_H = H^T (x) 1 - 1 (x) H. Its Gram matrix has a closed form, which
    // gives a cheap candidate kernel; the candidates are then re-tested
    // against L itself with the relative singular value rule.
    Matrix gram = Matrix::Zero(n, n);
    Matrix sq = Matrix::Zero(d, d);
    for (const auto& h : herm) {
        gram -= 2.0 * kron(h.conjugate(), h);
        sq += h * h;
    }
    gram += kron(sq.conjugate(), id) + kron(id, sq);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix((gram + gram.adjoint()) / 2.0));
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double lmax = std::max(ev.maxCoeff(), 0.0);
    const double sigma_max = std::sqrt(lmax);
    const double candidate_cut = std::max(tol.eps() * tol.eps(), 1e-10) * lmax;

    Eigen::Index k = 0;
    while (k < ev.size() && ev(k) <= candidate_cut) ++k;
    if (k == 0) return VnAlgebra(d, OperatorBasis(d, d), Matrix::Zero(d, d));
    const Matrix cand = es.eigenvectors().leftCols(k);

    std::vector<Matrix> cand_ops;
    cand_ops.reserve(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < k; ++j) cand_ops.push_back(unvec(cand.col(j), d, d));

    Matrix r(0, k);
    Matrix block(n, k);
    for (const auto& h : herm) {
        for (Eigen::Index j = 0; j < k; ++j) {
            const Matrix& x = cand_ops[static_cast<std::size_t>(j)];
            block.col(j) = vec(x * h - h * x);
        }
        r = qr_append(r, block);
    }
    const Svd dec = svd(r, false, true);
    const Eigen::VectorXd& sv = dec.values;
    OperatorBasis basis(d, d);
    for (Eigen::Index j = 0; j < k; ++j) {
        const double s = j < sv.size() ? sv(j) : 0.0;
        if (s <= tol.eps() * sigma_max) basis.push_orthonormal(unvec(cand * dec.v.col(j), d, d));
    }
    return VnAlgebra(d, std::move(basis), identity(d));
}

VnAlgebra generated_algebra(std::span<const Matrix> gens, Eigen::Index dim_h, const Tolerance& tol) {
    check_generators(gens, dim_h, "generated_algebra");
    const Eigen::Index d = dim_h;
    const std::size_t full = static_cast<std::size_t>(d * d);

    OperatorBasis b(d, d);
    b.extend(identity(d), tol);
    for (const auto& g : gens) {
        b.extend(g, tol);
        b.extend(g.adjoint(), tol);
    }

    std::size_t first_new = 0;
    std::size_t rounds = 0;
    while (b.size() < full) {
        const std::size_t end = b.size();
        for (std::size_t j = first_new; j < end; ++j) {
            Matrix adj = b[j].adjoint();
            b.extend(adj, tol);
            for (std::size_t i = 0; i < end; ++i) {
                Matrix left = b[i] * b[j];
                Matrix right = b[j] * b[i];
                b.extend(left, tol);
                b.extend(right, tol);
            }
        }
        if (b.size() == end) break;
        first_new = end;
        if (++rounds > full) throw NumericalError("generated_algebra: span failed to stabilize");
    }
    return VnAlgebra(d, std::move(b), identity(d));
}

OperatorBasis intersect(const OperatorBasis& a, const OperatorBasis& b, const Tolerance& tol) {
    if (a.empty() || b.empty()) return OperatorBasis(a.rows(), a.cols());
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("intersect: shape mismatch");
    const auto na = static_cast<Eigen::Index>(a.size());
    const auto nb = static_cast<Eigen::Index>(b.size());
    Matrix m(a.rows() * a.cols(), na + nb);
    for (Eigen::Index i = 0; i < na; ++i) m.col(i) = vec(a[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < nb; ++j) m.col(na + j) = -vec(b[static_cast<std::size_t>(j)]);
    const Matrix ns = nullspace_matrix(m, tol);
    std::vector<Matrix> common;
    for (Eigen::Index c = 0; c < ns.cols(); ++c) {
        Matrix x = Matrix::Zero(a.rows(), a.cols());
        for (Eigen::Index i = 0; i < na; ++i) x += ns(i, c) * a[static_cast<std::size_t>(i)];
        common.push_back(std::move(x));
    }
    if (common.empty()) return OperatorBasis(a.rows(), a.cols());
    return orthonormalize(common, tol);
}

VnAlgebra center(const VnAlgebra& alg, const Tolerance& tol) {
    const VnAlgebra comm = commutant(alg.basis().elements(), alg.dim_h(), tol);
    return VnAlgebra::from_basis(alg.dim_h(), intersect(alg.basis(), comm.basis(), tol), tol);
}

bool is_factor(const VnAlgebra& alg, const Tolerance& tol) { return center(alg, tol).dim() == 1; }

Containment contains(const VnAlgebra& alg, const Matrix& x, const Tolerance& tol) {
    if (x.rows() != alg.dim_h() || x.cols() != alg.dim_h()) throw DimensionError("contains: shape mismatch");
    const double res = alg.basis().residual(x);
    return {res <= tol.eps() * x.norm(), res};
}

double mutual_containment(const VnAlgebra& a, const VnAlgebra& b) {
    return mutual_containment(a.basis(), b.basis());
}

std::vector<std::pair<int, int>> AlgebraStructure::pattern() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& blk : blocks) out.emplace_back(blk.n, blk.m);
    return out;
}

int AlgebraStructure::sum_n_squared() const {
    return std::accumulate(blocks.begin(), blocks.end(), 0, [](int s, const AlgebraBlock& b) { return s + b.n * b.n; });
}

int AlgebraStructure::sum_nm() const {
    return std::accumulate(blocks.begin(), blocks.end(), 0, [](int s, const AlgebraBlock& b) { return s + b.n * b.m; });
}

int AlgebraStructure::sum_m_squared() const {
    return std::accumulate(blocks.begin(), blocks.end(), 0, [](int s, const AlgebraBlock& b) { return s + b.m * b.m; });
}

namespace {

// Groups ascending eigenvalues into runs separated by gaps larger than `gap`.
std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(const Eigen::VectorXd& ev, double gap) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= ev.size(); ++i) {
        if (i == ev.size() || ev(i) - ev(i - 1) > gap) {
            out.emplace_back(start, i - start);
            start = i;
        }
    }
    return out;
}

Matrix random_hermitian_combination(const OperatorBasis& herm, Rng& rng, double lo, double hi) {
    Matrix z = Matrix::Zero(herm.rows(), herm.cols());
    for (const auto& h : herm) z += rng.uniform(lo, hi) * h;
    return (z + z.adjoint()) / 2.0;
}

// Frame of one central block in which the compressed algebra reads a (x) 1_m.
std::optional<Matrix> block_frame(const OperatorBasis& compressed, int n, int m, Rng& rng, const Tolerance& tol) {
    const Eigen::Index s = compressed.rows();
    if (n == 1) return identity(s);

    const OperatorBasis herm = hermitian_basis(compressed.elements(), tol);
    const Matrix h = random_hermitian_combination(herm, rng, -1.0, 1.0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double gap = std::sqrt(tol.eps()) * std::max(1.0, ev.cwiseAbs().maxCoeff());
    const auto groups = clusters(ev, gap);
    if (static_cast<int>(groups.size()) != n) return std::nullopt;
    for (const auto& g : groups) {
        if (g.second != m) return std::nullopt;
    }

    Matrix a = Matrix::Zero(s, s);
    for (const auto& b : compressed) a += Complex(rng.normal(), rng.normal()) * b;

    const Matrix g1 = es.eigenvectors().middleCols(groups[0].first, m);
    const Matrix e11 = g1 * g1.adjoint();
    Matrix frame(s, s);
    frame.leftCols(m) = g1;
    for (int i = 1; i < n; ++i) {
        const Matrix gi = es.eigenvectors().middleCols(groups[static_cast<std::size_t>(i)].first, m);
        const Matrix x = gi * gi.adjoint() * a * e11;
        // x^dagger x = c e11 inside M_n (x) 1_m.
        const double c = x.squaredNorm() / m;
        if (!(c > tol.eps())) return std::nullopt;
        frame.middleCols(static_cast<Eigen::Index>(i) * m, m) = (x / std::sqrt(c)) * g1;
    }
    if (isometry_defect(frame) > std::sqrt(tol.eps())) return std::nullopt;
    return frame;
}

std::optional<AlgebraStructure> try_structure(const VnAlgebra& alg, const OperatorBasis& center_herm,
                                              const Matrix& unit_frame, std::uint64_t seed, const Tolerance& tol) {
    Rng rng(seed);
    const Eigen::Index d = alg.dim_h();
    const Matrix z = random_hermitian_combination(center_herm, rng, 1.0, 2.0);
    const Matrix zc = unit_frame.adjoint() * z * unit_frame;
    Eigen::SelfAdjointEigenSolver<Matrix> es((zc + zc.adjoint()) / 2.0);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double gap = std::sqrt(tol.eps()) * std::max(1.0, ev.cwiseAbs().maxCoeff());
    const auto groups = clusters(ev, gap);
    if (groups.size() != center_herm.size()) return std::nullopt;

    struct Keyed {
        AlgebraBlock block;
        double position;
    };
    std::vector<Keyed> keyed;
    for (const auto& [start, size] : groups) {
        const Matrix wf = unit_frame * es.eigenvectors().middleCols(start, size);
        std::vector<Matrix> comp;
        comp.reserve(alg.dim());
        for (const auto& a : alg.basis()) comp.push_back(wf.adjoint() * a * wf);
        const OperatorBasis cb = orthonormalize(comp, tol);
        const int r = static_cast<int>(cb.size());
        const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(r))));
        if (n * n != r || n == 0 || size % n != 0) {
            throw NumericalError("structure: compressed block algebra has dimension " + std::to_string(r) +
                                 ", not a full matrix algebra");
        }
        const int m = static_cast<int>(size) / n;
        auto frame = block_frame(cb, n, m, rng, tol);
        if (!frame) return std::nullopt;

        AlgebraBlock blk;
        blk.projector = wf * wf.adjoint();
        blk.n = n;
        blk.m = m;
        blk.frame = wf * *frame;
        double pos = 0.0;
        for (Eigen::Index i = 0; i < d; ++i) pos += static_cast<double>(i) * blk.projector(i, i).real();
        keyed.push_back({std::move(blk), pos / static_cast<double>(size)});
    }

    std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& x, const Keyed& y) {
        const int rx = x.block.n * x.block.m;
        const int ry = y.block.n * y.block.m;
        if (rx != ry) return rx > ry;
        if (x.block.n != y.block.n) return x.block.n > y.block.n;
        return x.position < y.position;
    });

    AlgebraStructure out;
    Eigen::Index col = 0;
    out.change_of_basis = Matrix::Zero(d, d);
    for (auto& kb : keyed) {
        out.change_of_basis.middleCols(col, kb.block.frame.cols()) = kb.block.frame;
        col += kb.block.frame.cols();
        out.blocks.push_back(std::move(kb.block));
    }
    const Matrix rest = projector_complement(alg.unit());
    if (col + rest.cols() != d) throw NumericalError("structure: unit rank is inconsistent with its blocks");
    out.change_of_basis.rightCols(rest.cols()) = rest;

    if (out.sum_n_squared() != static_cast<int>(alg.dim())) {
        throw NumericalError("structure: block dimensions do not add up to the algebra dimension");
    }
    return out;
}

}  // namespace

AlgebraStructure structure(const VnAlgebra& alg, const Tolerance& tol, std::uint64_t seed) {
    const Eigen::Index d = alg.dim_h();
    if (alg.dim() == 0) return AlgebraStructure{{}, identity(d)};
    const Matrix unit_frame = range_basis(alg.unit(), tol);
    const VnAlgebra z = center(alg, tol);
    const OperatorBasis center_herm = hermitian_basis(z.basis().elements(), tol);
    constexpr int kRetries = 5;
    for (int attempt = 0; attempt <= kRetries; ++attempt) {
        auto s = try_structure(alg, center_herm, unit_frame, seed + static_cast<std::uint64_t>(attempt), tol);
        if (s) return *s;
    }
    throw DegeneracyError("structure: central spectrum stayed degenerate after " + std::to_string(kRetries) +
                          " retries");
}

}  // namespace oaqec
