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

#ifndef OAQEC_SERIALIZE_HPP
#define OAQEC_SERIALIZE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oaqec/channel.hpp"

namespace oaqec {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kFormatVersion = "oaqec/1";

/// Malformed input document; carries the 1-based position when known.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(what), line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

/// Matrices travel as row-major nested arrays of [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

struct ChannelDocument {
    std::string version{kFormatVersion};
    KrausChannel channel;
    Json metadata = Json::object();
    std::optional<double> tolerance;
};

/// Parses the text with line/column diagnostics. Shape inconsistencies
/// surface as DimensionError.
Json parse_json(std::string_view text);
ChannelDocument parse_channel_document(std::string_view text);
Json channel_document_json(const ChannelDocument& doc);

/// {"version": ..., "matrix": [...]} or a bare nested array.
Matrix parse_matrix_document(std::string_view text);
Json matrix_document_json(const Matrix& m);

struct HamiltonianDocument {
    Eigen::Index d_sys = 0;
    Eigen::Index d_env = 0;
    Matrix h_total;
    /// System parts J_i when the document lists H = sum_i J_i (x) K_i explicitly.
    std::vector<Matrix> system_ops;
    std::optional<Vector> env_state;
};

HamiltonianDocument parse_hamiltonian_document(std::string_view text);

/// Deterministic serialization: insertion-ordered keys, two-space indent,
/// floating point values with 17 significant digits.
std::string dump_canonical(const Json& j);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex_digest(std::uint64_t h);
/// Digest of a matrix after rounding every entry to a 1e-8 grid.
std::string rounded_digest(const Matrix& m);

}  // namespace oaqec

#endif
