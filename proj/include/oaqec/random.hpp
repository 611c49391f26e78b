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

#ifndef OAQEC_RANDOM_HPP
#define OAQEC_RANDOM_HPP

#include <cstdint>
#include <random>

#include "oaqec/matcore.hpp"

namespace oaqec {

/// Seeded generator whose draws are reproducible across standard libraries:
/// only the mt19937_64 bit stream is used, the conversions are our own.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer on [lo, hi].
    int uniform_int(int lo, int hi);
    /// Standard normal (Box-Muller).
    double normal();

    /// Entries i.i.d. complex Gaussian with unit variance.
    Matrix ginibre(Eigen::Index rows, Eigen::Index cols);
    /// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
    Matrix unitary(Eigen::Index d);
    /// Haar-distributed isometry C^cols -> C^rows.
    Matrix isometry(Eigen::Index rows, Eigen::Index cols);
    Matrix hermitian(Eigen::Index d);
    Vector unit_vector(Eigen::Index d);

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace oaqec

#endif
