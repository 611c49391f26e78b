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

#ifndef OAQEC_CONSTRUCTIONS_HPP
#define OAQEC_CONSTRUCTIONS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oaqec/channel.hpp"

namespace oaqec {

using BlockPattern = std::vector<std::pair<int, int>>;

/// A channel bundled with the answers the analysis pipeline must reproduce.
struct LabeledFixture {
    std::string name;
    KrausChannel channel;
    int expected_correctable_dim;
    BlockPattern expected_structure;
    std::string notes;
    std::optional<int> expected_noiseless_dim;
    std::optional<BlockPattern> expected_noiseless_structure;
    /// Code isometry and the correctable dimension of the restricted channel.
    std::optional<Matrix> encoding;
    std::optional<int> expected_code_dim;
    /// Fixture-specific matrices (the isometries V_i of a type-I code).
    std::vector<Matrix> aux;
};

/// Channel C^{d0} -> C^{d_total} with Kraus sqrt(p_i) V_i, where the V_i are
/// isometries with mutually orthogonal ranges cut from a seeded Haar unitary.
LabeledFixture type1_code(int d0, int m, const std::vector<double>& probs, int d_total, std::uint64_t seed);

/// Clock U = diag(1, w, ..., w^{q-1}) and shift V|j> = |j+1 mod q>, w = e^{2 pi i/q}; UV = w VU.
std::pair<Matrix, Matrix> clock_shift(int q);

/// Noise on C^q (x) C^q built from the clock-shift pair on the first factor.
/// The second factor carries a noiseless matrix algebra 1 (x) M_q.
LabeledFixture rotation_analog(int q, bool include_identity, std::uint64_t seed);

/// Three-qubit bit-flip noise with Kraus sqrt(p_0) I, sqrt(p_a) X_a, encoding span{|000>, |111>}.
LabeledFixture bit_flip_code(std::uint64_t seed);

/// Random block pattern (n_k, m_k) with sum n_k m_k = d.
BlockPattern random_block_pattern(int d, std::uint64_t seed);

/// Channel on C^d whose correctable algebra is W ((+)_k M_{n_k} (x) 1_{m_k}) W^dagger
/// for a seeded random pattern and Haar W, followed by a Haar unitary.
LabeledFixture random_structured_channel(int d, int n_kraus, std::uint64_t seed);

/// Generic channel from a Haar isometry C^{d_in} -> C^{d_out * n_kraus}.
KrausChannel random_channel(int d_in, int d_out, int n_kraus, std::uint64_t seed);

struct BlockGenerators {
    std::vector<Matrix> gens;
    BlockPattern pattern;
    Matrix frame;  ///< unitary W exhibiting the block form
};

/// `count` random elements of W ((+)_k M_{n_k} (x) 1_{m_k}) W^dagger.
BlockGenerators random_block_generators(int d, int count, std::uint64_t seed);

}  // namespace oaqec

#endif
