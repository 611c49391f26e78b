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

#include "oaqec/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "oaqec/errors.hpp"
#include "oaqec/random.hpp"

namespace oaqec {

namespace {

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    Eigen::Index d = 0;
    for (const auto& b : blocks) d += b.rows();
    Matrix out = Matrix::Zero(d, d);
    Eigen::Index at = 0;
    for (const auto& b : blocks) {
        out.block(at, at, b.rows(), b.cols()) = b;
        at += b.rows();
    }
    return out;
}

}  // namespace

LabeledFixture type1_code(int d0, int m, const std::vector<double>& probs, int d_total, std::uint64_t seed) {
    if (d0 < 1 || m < 1) throw DomainError("type1_code: d0 and m must be positive");
    if (d_total < m * d0) throw DomainError("type1_code: d_total must be at least m * d0");
    if (static_cast<int>(probs.size()) != m) throw DimensionError("type1_code: need one probability per branch");
    double total = 0.0;
    for (double p : probs) {
        if (!(p > 0.0)) throw DomainError("type1_code: probabilities must be positive");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("type1_code: probabilities must sum to one");

    Rng rng(seed);
    const Matrix w = rng.unitary(d_total);
    std::vector<Matrix> isos;
    std::vector<Matrix> kraus;
    for (int i = 0; i < m; ++i) {
        isos.push_back(w.middleCols(static_cast<Eigen::Index>(i) * d0, d0));
        kraus.push_back(std::sqrt(probs[static_cast<std::size_t>(i)]) * isos.back());
    }
    LabeledFixture f{
        "type1",
        KrausChannel(d0, d_total, std::move(kraus)),
        d0 * d0,
        {{d0, 1}},
        "Type-I code: branches V_i with V_i^dagger V_j = delta_ij; whole input space correctable, "
        "recovery sum_i V_i^dagger rho V_i for any branch probabilities.",
        std::nullopt,
        std::nullopt,
        std::nullopt,
        std::nullopt,
        std::move(isos),
    };
    if (d_total == d0) {
        f.expected_noiseless_dim = d0 * d0;
        f.expected_noiseless_structure = BlockPattern{{d0, 1}};
    }
    return f;
}

std::pair<Matrix, Matrix> clock_shift(int q) {
    if (q < 2) throw DomainError("clock_shift: q must be at least 2");
    Matrix u = Matrix::Zero(q, q);
    Matrix v = Matrix::Zero(q, q);
    for (int j = 0; j < q; ++j) {
        u(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / q);
        v((j + 1) % q, j) = 1.0;
    }
    // Exact values where the phase is a multiple of pi/2.
    for (int j = 0; j < q; ++j) {
        if ((4 * j) % q == 0) {
            const int quarter = (4 * j) / q;
            static const Complex kQuarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            u(j, j) = kQuarter[quarter % 4];
        }
    }
    return {u, v};
}

LabeledFixture rotation_analog(int q, bool include_identity, std::uint64_t seed) {
    const auto [u, v] = clock_shift(q);
    const Matrix id = identity(q);
    std::vector<Matrix> ops;
    if (include_identity) ops.push_back(kron(id, id));
    ops.push_back(kron(u, id));
    ops.push_back(kron(v, id));
    if (!include_identity) ops.push_back(kron(Matrix(u * v), id));

    Rng rng(seed);
    std::vector<double> w(ops.size());
    for (auto& x : w) x = rng.uniform(0.5, 1.5);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    std::vector<Matrix> kraus;
    for (std::size_t i = 0; i < ops.size(); ++i) kraus.push_back(std::sqrt(w[i] / total) * ops[i]);

    return LabeledFixture{
        "rotation-analog",
        KrausChannel(q * q, q * q, std::move(kraus)),
        q * q,
        {{q, q}},
        "Finite clock-shift stand-in on C^q (x) C^q: errors generate M_q (x) 1, the noiseless algebra is the "
        "factor 1 (x) M_q. Exercises the commutant/noiseless mechanism only; it is type I, not type II.",
        q * q,
        BlockPattern{{q, q}},
        std::nullopt,
        std::nullopt,
        {u, v},
    };
}

LabeledFixture bit_flip_code(std::uint64_t seed) {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    const Matrix i2 = identity(2);
    const std::vector<Matrix> flips{kron(kron(x, i2), i2), kron(kron(i2, x), i2), kron(kron(i2, i2), x)};

    Rng rng(seed);
    std::vector<double> p(4);
    for (auto& w : p) w = rng.uniform(0.5, 1.5);
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    std::vector<Matrix> kraus{std::sqrt(p[0] / total) * identity(8)};
    for (std::size_t a = 0; a < 3; ++a) kraus.push_back(std::sqrt(p[a + 1] / total) * flips[a]);

    Matrix enc = Matrix::Zero(8, 2);
    enc(0, 0) = 1.0;
    enc(7, 1) = 1.0;
    return LabeledFixture{
        "bit-flip",
        KrausChannel(8, 8, std::move(kraus)),
        8,
        BlockPattern(8, {1, 1}),
        "Three-qubit bit-flip noise {I, X1, X2, X3}; the repetition code span{|000>,|111>} satisfies the "
        "Knill-Laflamme condition, so the restricted channel corrects all of B(C^2).",
        8,
        BlockPattern(8, {1, 1}),
        enc,
        4,
        {},
    };
}

BlockPattern random_block_pattern(int d, std::uint64_t seed) {
    if (d < 1) throw DomainError("random_block_pattern: d must be positive");
    Rng rng(seed);
    BlockPattern out;
    int rest = d;
    while (rest > 0) {
        const int n = rng.uniform_int(1, std::min(3, rest));
        const int m = rng.uniform_int(1, std::min(3, rest / n));
        out.emplace_back(n, m);
        rest -= n * m;
    }
    return out;
}

LabeledFixture random_structured_channel(int d, int n_kraus, std::uint64_t seed) {
    if (n_kraus < 2) throw DomainError("random_structured_channel: need at least two Kraus operators");
    const BlockPattern pattern = random_block_pattern(d, seed);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const Matrix w = rng.unitary(d);
    const Matrix out = rng.unitary(d);

    // Per block, an isometry C^m -> C^{m K} sliced into K operators B_ik.
    std::vector<std::vector<Matrix>> per_kraus(static_cast<std::size_t>(n_kraus));
    for (const auto& [n, m] : pattern) {
        const Matrix iso = rng.isometry(static_cast<Eigen::Index>(m) * n_kraus, m);
        for (int i = 0; i < n_kraus; ++i) {
            const Matrix b = iso.middleRows(static_cast<Eigen::Index>(i) * m, m);
            per_kraus[static_cast<std::size_t>(i)].push_back(kron(identity(n), b));
        }
    }
    std::vector<Matrix> kraus;
    for (const auto& blocks : per_kraus) kraus.push_back(out * w * block_diagonal(blocks) * w.adjoint());

    int dim = 0;
    for (const auto& [n, m] : pattern) dim += n * n;
    BlockPattern sorted = pattern;
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.first * a.second != b.first * b.second) return a.first * a.second > b.first * b.second;
        return a.first > b.first;
    });
    return LabeledFixture{
        "random-structured",
        KrausChannel(d, d, std::move(kraus)),
        dim,
        sorted,
        "Random channel E_i = U W ((+)_k 1_{n_k} (x) B_ik) W^dagger; the correctable algebra is "
        "W ((+)_k M_{n_k} (x) 1_{m_k}) W^dagger.",
        std::nullopt,
        std::nullopt,
        std::nullopt,
        std::nullopt,
        {w},
    };
}

KrausChannel random_channel(int d_in, int d_out, int n_kraus, std::uint64_t seed) {
    if (d_in < 1 || d_out < 1 || n_kraus < 1) throw DomainError("random_channel: sizes must be positive");
    if (d_out * n_kraus < d_in) throw DomainError("random_channel: d_out * n_kraus must be at least d_in");
    Rng rng(seed);
    const Matrix iso = rng.isometry(static_cast<Eigen::Index>(d_out) * n_kraus, d_in);
    std::vector<Matrix> kraus;
    for (int k = 0; k < n_kraus; ++k) kraus.push_back(iso.middleRows(static_cast<Eigen::Index>(k) * d_out, d_out));
    return KrausChannel(d_in, d_out, std::move(kraus));
}

BlockGenerators random_block_generators(int d, int count, std::uint64_t seed) {
    BlockGenerators out;
    out.pattern = random_block_pattern(d, seed);
    Rng rng(seed ^ 0x5851f42d4c957f2dULL);
    out.frame = rng.unitary(d);
    for (int c = 0; c < count; ++c) {
        std::vector<Matrix> blocks;
        for (const auto& [n, m] : out.pattern) blocks.push_back(kron(rng.ginibre(n, n), identity(m)));
        out.gens.push_back(out.frame * block_diagonal(blocks) * out.frame.adjoint());
    }
    return out;
}

}  // namespace oaqec
