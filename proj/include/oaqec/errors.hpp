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

#ifndef OAQEC_ERRORS_HPP
#define OAQEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace oaqec {

/// Operand shapes are incompatible.
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Operand has the right shape but violates a mathematical precondition
/// (not Hermitian, not an isometry, not trace preserving, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// An iterative routine failed to settle.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Spectral gaps stayed unresolved after all retries.
class DegeneracyError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

}  // namespace oaqec

#endif
