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

#ifndef OAQEC_CHANNEL_HPP
#define OAQEC_CHANNEL_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "oaqec/matcore.hpp"

namespace oaqec {

/// Channel C^{d_in} -> C^{d_out} in operator-sum form rho -> sum_k E_k rho E_k^dagger.
/// The constructor checks shapes only; use `validate` for trace preservation.
class KrausChannel {
  public:
    KrausChannel(Eigen::Index d_in, Eigen::Index d_out, std::vector<Matrix> kraus);
    /// Infers dimensions from the first operator.
    explicit KrausChannel(std::vector<Matrix> kraus);

    static KrausChannel identity(Eigen::Index d);
    static KrausChannel unitary(const Matrix& u);

    Eigen::Index d_in() const { return d_in_; }
    Eigen::Index d_out() const { return d_out_; }
    std::size_t size() const { return kraus_.size(); }
    const std::vector<Matrix>& kraus() const { return kraus_; }
    const Matrix& operator[](std::size_t i) const { return kraus_[i]; }

  private:
    KrausChannel(std::pair<Eigen::Index, Eigen::Index> shape, std::vector<Matrix>&& kraus);

    Eigen::Index d_in_;
    Eigen::Index d_out_;
    std::vector<Matrix> kraus_;
};

struct ValidationReport {
    double tp_residual;      ///< spectral norm of sum E_k^dagger E_k - I
    double choi_min_eigen;   ///< smallest eigenvalue of the Choi matrix
    bool passed;
};

ValidationReport validate(const KrausChannel& ch, const Tolerance& tol = {});

Matrix apply(const KrausChannel& ch, const Matrix& rho);
/// Heisenberg picture: sum_k E_k^dagger a E_k.
Matrix apply_dual(const KrausChannel& ch, const Matrix& a);

/// sum_{ij} |i><j| (x) E(|i><j|), a (d_in d_out) square PSD matrix.
Matrix choi(const KrausChannel& ch);
/// Frobenius distance between Choi matrices; the only notion of channel
/// equality used in this library.
double choi_distance(const KrausChannel& a, const KrausChannel& b);

/// Kraus list {F_j E_i}, i.e. ch1 first, then ch2.
KrausChannel compose(const KrausChannel& ch2, const KrausChannel& ch1);

/// Channel with Kraus {E_k v}; `v` must be an isometry.
KrausChannel restrict(const KrausChannel& ch, const Matrix& v, const Tolerance& tol = {});

/// Rebuilds the Kraus list from the Choi eigendecomposition, dropping
/// eigenvalues below eps * lambda_max.
KrausChannel compress(const KrausChannel& ch, const Tolerance& tol = {});

/// Kraus {F_i = sum_j gamma_ij E_j}.
KrausChannel remix(const KrausChannel& ch, const Matrix& gamma);

/// System (x) environment model of a channel, H acting on C^{d_sys} (x) C^{d_env}
/// with system index major.
struct DilationModel {
    Matrix h_total;
    Vector psi_env;
    double t = 0.0;
    Eigen::Index d_sys = 0;
    Eigen::Index d_env = 0;
};

/// E_k = (1 (x) <k|) exp(-i t H) (1 (x) |psi>). `env_basis` holds the
/// environment basis vectors as columns (computational basis when absent).
KrausChannel dilate_to_kraus(const DilationModel& dm, const std::optional<Matrix>& env_basis = std::nullopt,
                             const Tolerance& tol = {});

/// Operator Schmidt decomposition H = sum_i J_i (x) K_i; returns the system parts J_i.
std::vector<Matrix> interaction_operators(const Matrix& h_total, Eigen::Index d_sys, Eigen::Index d_env,
                                          const Tolerance& tol = {});

/// Orthonormal basis of span{ I, J_a, J_a J_b, ... } using products of at most `order` factors.
OperatorBasis error_span(std::span<const Matrix> interaction_ops, int order, const Tolerance& tol = {});

/// Dimension of error_span for every order 0..max_order.
std::vector<std::size_t> error_span_dims(std::span<const Matrix> interaction_ops, int max_order,
                                         const Tolerance& tol = {});

}  // namespace oaqec

#endif
