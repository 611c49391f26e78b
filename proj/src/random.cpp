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

#include "oaqec/random.hpp"

#include <cmath>
#include <numbers>

#include "oaqec/errors.hpp"

namespace oaqec {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int lo, int hi) {
    if (hi < lo) throw DomainError("uniform_int: empty range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

Matrix Rng::ginibre(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = normal();
            const double im = normal();
            m(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    return m;
}

Matrix Rng::isometry(Eigen::Index rows, Eigen::Index cols) {
    if (cols > rows) throw DimensionError("isometry: cols exceeds rows");
    const Matrix g = ginibre(rows, cols);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
    const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < cols; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

Matrix Rng::unitary(Eigen::Index d) { return isometry(d, d); }

Matrix Rng::hermitian(Eigen::Index d) {
    const Matrix g = ginibre(d, d);
    return (g + g.adjoint()) / 2.0;
}

Vector Rng::unit_vector(Eigen::Index d) {
    Matrix g = ginibre(d, 1);
    return g.col(0).normalized();
}

}  // namespace oaqec
