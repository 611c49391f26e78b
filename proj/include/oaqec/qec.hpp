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

#ifndef OAQEC_QEC_HPP
#define OAQEC_QEC_HPP

#include <vector>

#include "oaqec/algebra.hpp"
#include "oaqec/channel.hpp"
#include "oaqec/matcore.hpp"

namespace oaqec {

/// Commutant of {E_i^dagger E_j}: every sharp observable in it is correctable.
VnAlgebra correctable_algebra(const KrausChannel& noise, const Tolerance& tol = {});

/// Commutant of {E_k, E_k^dagger}: observables fixed by the dual channel.
VnAlgebra noiseless_algebra(const KrausChannel& noise, const Tolerance& tol = {});

/// lambda_i = 2^{-i}, i = 0..count-1.
std::vector<double> geometric_weights(std::size_t count);

/// sum_i lambda_i E_i E_i^dagger.
Matrix weighted_output_effect(const KrausChannel& noise, const std::vector<double>& lambda_weights);

/// Projector onto the support of E(1) = sum_i E_i E_i^dagger, i.e. the span
/// of the ranges of the Kraus operators.
Matrix output_support(const KrausChannel& noise, const Tolerance& tol = {});

/// Recovery channel C^{d_out} -> C^{d_in} with Kraus sqrt(lambda_i) E_i^dagger K,
/// K = (sum_i lambda_i E_i E_i^dagger)^{-1/2} on its support. When the
/// support is a proper subspace, rank-one operators |0><q_j| over an
/// orthonormal basis {q_j} of its complement are appended so that the result
/// is trace preserving. Empty weights mean all ones.
KrausChannel correction_channel(const KrausChannel& noise, const std::vector<double>& lambda_weights = {},
                                const Tolerance& tol = {});

struct CorrectionPackage {
    KrausChannel noise;
    VnAlgebra correctable;
    KrausChannel correction;
    std::vector<double> lambda_weights;
    Matrix support;  ///< output_support(noise)
};

CorrectionPackage make_correction_package(const KrausChannel& noise, const std::vector<double>& lambda_weights = {},
                                          const Tolerance& tol = {});

/// max over the basis of ||E*(A) - A||_F. Requires d_in == d_out.
double verify_fixed(const KrausChannel& noise, const VnAlgebra& alg);

/// max over the basis of ||E*(R*(A)) - A||_F.
double verify_correction(const KrausChannel& noise, const KrausChannel& correction, const VnAlgebra& alg);

/// max_k ||R*(P) E_k - E_k P||_F for an operator P on the input space.
double intertwining_residual(const KrausChannel& noise, const KrausChannel& correction, const Matrix& p);

struct HomomorphismReport {
    double homomorphism;  ///< max ||E*(BB') - E*(B)E*(B')||, B = R*(A)
    double faithful;      ///< max ||S(R*(A)R*(A') - R*(AA'))S|| on the output support S
};

HomomorphismReport homomorphism_residual(const CorrectionPackage& package);

struct RestrictedCode {
    Matrix v;
    VnAlgebra a0;
    KrausChannel r0;
    OperatorBasis s0;
    double compression_residual;    ///< span(V^dagger S0 V) against A0
    double simultaneous_residual;   ///< max ||E*(R0*(V^dagger S V)) - S|| over S0
    double hermitian_residual;      ///< S0 closed under adjoint
    double product_residual;        ///< 0 iff S0 is closed under products
};

RestrictedCode restricted_code(const KrausChannel& noise, const Matrix& v, const Tolerance& tol = {});

struct KlReport {
    Matrix lambda;   ///< lambda_ij = Tr(V^dagger E_i^dagger E_j V) / d0
    double residual; ///< max_ij ||V^dagger E_i^dagger E_j V - lambda_ij 1||_F
    bool passed;
};

KlReport check_kl(const Matrix& v, const KrausChannel& noise, const Tolerance& tol = {});

struct SubsystemReport {
    /// Lambda_ij, row-major in (i, j), each d_b x d_b.
    std::vector<Matrix> lambda;
    std::size_t kraus_count;
    double residual;
    bool passed;
    /// When passed: residual of B(C^{d_a}) (x) 1 inside the correctable
    /// algebra of the restricted channel; otherwise negative.
    double containment_residual;

    const Matrix& at(std::size_t i, std::size_t j) const { return lambda[i * kraus_count + j]; }
};

SubsystemReport check_subsystem(const Matrix& v, Eigen::Index d_a, Eigen::Index d_b, const KrausChannel& noise,
                                const Tolerance& tol = {});

struct RestrictedNoiseless {
    VnAlgebra algebra;
    double residual;  ///< max over basis A and k of ||V A V^dagger E_k V - E_k V A||_F
};

RestrictedNoiseless check_restricted_noiseless(const Matrix& v, const KrausChannel& noise, const Tolerance& tol = {});

struct RemixReport {
    KrausChannel remixed;
    double tp_residual;
    double algebra_residual;      ///< mutual containment of the two correctable algebras
    double correction_residual;   ///< original correction applied to the remixed noise
    double choi_residual;         ///< Choi distance between noise and remixed noise
    double correction_choi_residual;  ///< Choi distance between the two correction channels
    bool passed;
};

/// Remixes the Kraus operators with `gamma` and checks that the correctable
/// algebra and its correction are unchanged.
RemixReport remix_robustness(const KrausChannel& noise, const Matrix& gamma, const Tolerance& tol = {});

}  // namespace oaqec

#endif
