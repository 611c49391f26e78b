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

#include "oaqec/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "oaqec/errors.hpp"

namespace oaqec {

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("matrix entry must be a [re, im] pair of numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

void check_version(const Json& j) {
    if (!j.contains("version")) throw ParseError("document has no \"version\" field");
    if (!j["version"].is_string() || j["version"].get<std::string>() != kFormatVersion) {
        throw ParseError("unsupported document version, expected \"" + std::string(kFormatVersion) + "\"");
    }
}

Eigen::Index positive_int(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() <= 0) {
        throw ParseError(std::string("field \"") + key + "\" must be a positive integer");
    }
    return static_cast<Eigen::Index>(j[key].get<long long>());
}

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    if (x == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void dump_into(const Json& j, std::ostringstream& os, int indent) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [k, v] : j.items()) {
                if (!first) os << ",\n";
                first = false;
                os << pad << Json(k).dump() << ": ";
                dump_into(v, os, indent + 2);
            }
            os << "\n" << close << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            // Arrays of scalars stay on one line.
            bool scalars = true;
            for (const auto& v : j) scalars = scalars && !v.is_structured();
            if (scalars) {
                os << "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    dump_into(j[i], os, indent);
                }
                os << "]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                dump_into(j[i], os, indent + 2);
            }
            os << "\n" << close << "]";
            return;
        }
        case Json::value_t::number_float:
            os << format_double(j.get<double>());
            return;
        default:
            os << j.dump();
            return;
    }
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix rows must be nonempty arrays");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array()) throw ParseError("matrix rows must be arrays");
        if (static_cast<Eigen::Index>(row.size()) != cols) throw DimensionError("matrix rows have unequal lengths");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    if (!m.allFinite()) throw ParseError("matrix has non-finite entries");
    return m;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Json::array({v(i).real(), v(i).imag()}));
    return out;
}

Vector vector_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("vector must be a nonempty array of [re, im] pairs");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return v;
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col), line,
                         col);
    }
}

ChannelDocument parse_channel_document(std::string_view text) {
    const Json j = parse_json(text);
    if (!j.is_object()) throw ParseError("channel document must be a JSON object");
    check_version(j);
    const Eigen::Index d_in = positive_int(j, "d_in");
    const Eigen::Index d_out = positive_int(j, "d_out");
    if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
        throw ParseError("field \"kraus\" must be a nonempty array of matrices");
    }
    std::vector<Matrix> kraus;
    for (const auto& k : j["kraus"]) kraus.push_back(matrix_from_json(k));

    ChannelDocument doc{std::string(kFormatVersion), KrausChannel(d_in, d_out, std::move(kraus)), Json::object(),
                        std::nullopt};
    if (j.contains("metadata")) {
        if (!j["metadata"].is_object()) throw ParseError("field \"metadata\" must be an object");
        doc.metadata = j["metadata"];
    }
    if (j.contains("tolerance")) {
        if (!j["tolerance"].is_number() || !(j["tolerance"].get<double>() > 0.0)) {
            throw ParseError("field \"tolerance\" must be a positive number");
        }
        doc.tolerance = j["tolerance"].get<double>();
    }
    return doc;
}

Json channel_document_json(const ChannelDocument& doc) {
    Json j;
    j["version"] = doc.version;
    j["d_in"] = doc.channel.d_in();
    j["d_out"] = doc.channel.d_out();
    if (doc.tolerance) j["tolerance"] = *doc.tolerance;
    Json ks = Json::array();
    for (const auto& k : doc.channel.kraus()) ks.push_back(matrix_to_json(k));
    j["kraus"] = std::move(ks);
    if (!doc.metadata.empty()) j["metadata"] = doc.metadata;
    return j;
}

Matrix parse_matrix_document(std::string_view text) {
    const Json j = parse_json(text);
    if (j.is_array()) return matrix_from_json(j);
    if (!j.is_object()) throw ParseError("matrix document must be an object or an array");
    check_version(j);
    if (!j.contains("matrix")) throw ParseError("matrix document has no \"matrix\" field");
    return matrix_from_json(j["matrix"]);
}

Json matrix_document_json(const Matrix& m) {
    Json j;
    j["version"] = std::string(kFormatVersion);
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["matrix"] = matrix_to_json(m);
    return j;
}

HamiltonianDocument parse_hamiltonian_document(std::string_view text) {
    const Json j = parse_json(text);
    if (!j.is_object()) throw ParseError("Hamiltonian document must be a JSON object");
    check_version(j);
    HamiltonianDocument doc;
    doc.d_sys = positive_int(j, "d_sys");
    doc.d_env = positive_int(j, "d_env");
    const Eigen::Index d = doc.d_sys * doc.d_env;
    if (j.contains("interactions")) {
        if (!j["interactions"].is_array() || j["interactions"].empty()) {
            throw ParseError("field \"interactions\" must be a nonempty array");
        }
        doc.h_total = Matrix::Zero(d, d);
        for (const auto& term : j["interactions"]) {
            if (!term.is_object() || !term.contains("system") || !term.contains("environment")) {
                throw ParseError("each interaction needs \"system\" and \"environment\" matrices");
            }
            Matrix js = matrix_from_json(term["system"]);
            const Matrix ke = matrix_from_json(term["environment"]);
            if (js.rows() != doc.d_sys || js.cols() != doc.d_sys || ke.rows() != doc.d_env || ke.cols() != doc.d_env) {
                throw DimensionError("interaction factor shapes do not match d_sys/d_env");
            }
            doc.h_total += kron(js, ke);
            doc.system_ops.push_back(std::move(js));
        }
    } else if (j.contains("hamiltonian")) {
        doc.h_total = matrix_from_json(j["hamiltonian"]);
        if (doc.h_total.rows() != d || doc.h_total.cols() != d) {
            throw DimensionError("Hamiltonian must be (d_sys*d_env) square");
        }
    } else {
        throw ParseError("Hamiltonian document needs \"hamiltonian\" or \"interactions\"");
    }
    if (j.contains("env_state")) {
        doc.env_state = vector_from_json(j["env_state"]);
        if (doc.env_state->size() != doc.d_env) throw DimensionError("env_state length must equal d_env");
    }
    return doc;
}

std::string dump_canonical(const Json& j) {
    std::ostringstream os;
    dump_into(j, os, 0);
    os << "\n";
    return os.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex_digest(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string rounded_digest(const Matrix& m) {
    std::string acc = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ";";
    char buf[64];
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            double re = std::round(m(i, j).real() * 1e8);
            double im = std::round(m(i, j).imag() * 1e8);
            if (re == 0.0) re = 0.0;
            if (im == 0.0) im = 0.0;
            std::snprintf(buf, sizeof buf, "%.0f,%.0f;", re, im);
            acc += buf;
        }
    }
    return hex_digest(fnv1a64(acc));
}

}  // namespace oaqec
