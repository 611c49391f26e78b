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

#include "oaqec/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "oaqec/algebra.hpp"
#include "oaqec/errors.hpp"
#include "oaqec/qec.hpp"

namespace oaqec {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write file '" + path + "'");
    f << text;
}

Json pattern_json(const BlockPattern& p) {
    Json out = Json::array();
    for (const auto& [n, m] : p) out.push_back(Json::array({n, m}));
    return out;
}

Json structure_json(const AlgebraStructure& s) {
    Json blocks = Json::array();
    for (const auto& b : s.blocks) {
        Json jb;
        jb["n"] = b.n;
        jb["m"] = b.m;
        blocks.push_back(std::move(jb));
    }
    return blocks;
}

// Canonical fingerprint of a span: projections of two fixed probe matrices.
std::string span_digest(const OperatorBasis& basis, Eigen::Index d) {
    Matrix p1(d, d);
    Matrix p2(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            p1(i, j) = Complex(1.0 + static_cast<double>(i), 0.5 * static_cast<double>(j + 1));
            p2(i, j) = Complex(std::cos(static_cast<double>(3 * i + j)), std::sin(static_cast<double>(i * j + 1)));
        }
    }
    if (basis.empty()) return rounded_digest(Matrix::Zero(d, 2 * d));
    Matrix both(d, 2 * d);
    both << basis.project(p1), basis.project(p2);
    return rounded_digest(both);
}

Json algebra_json(const VnAlgebra& alg, const AlgebraStructure& s, std::size_t center_dim) {
    Json j;
    j["dim"] = alg.dim();
    j["center_dim"] = center_dim;
    j["is_factor"] = center_dim == 1;
    j["structure"] = structure_json(s);
    j["sum_n_squared"] = s.sum_n_squared();
    j["sum_nm"] = s.sum_nm();
    j["basis_digest"] = span_digest(alg.basis(), alg.dim_h());
    return j;
}

Json match_json(const Json& expected, const Json& actual) {
    Json j;
    j["expected"] = expected;
    j["actual"] = actual;
    j["match"] = expected == actual;
    return j;
}

}  // namespace

Json analyze_channel(const ChannelDocument& doc, std::string_view raw_text, const AnalyzeOptions& opts) {
    const Tolerance tol(opts.tolerance);
    const double eps = tol.eps();
    const KrausChannel& ch = doc.channel;

    Json rep;
    rep["version"] = std::string(kFormatVersion);
    rep["tolerance"] = eps;
    rep["seed"] = opts.seed;
    Json input;
    input["digest"] = "fnv1a64:" + hex_digest(fnv1a64(raw_text));
    if (doc.metadata.contains("name")) input["name"] = doc.metadata["name"];
    input["d_in"] = ch.d_in();
    input["d_out"] = ch.d_out();
    input["kraus_count"] = ch.size();
    rep["input"] = std::move(input);

    const ValidationReport val = validate(ch, tol);
    rep["validation"] = Json{{"tp_residual", val.tp_residual}, {"choi_min_eigenvalue", val.choi_min_eigen},
                             {"pass", val.passed}};
    if (!val.passed) {
        rep["pass"] = false;
        return rep;
    }
    bool pass = true;

    const CorrectionPackage pkg = make_correction_package(ch, {}, tol);
    const AlgebraStructure cs = structure(pkg.correctable, tol, opts.seed);
    rep["correctable"] = algebra_json(pkg.correctable, cs, center(pkg.correctable, tol).dim());

    std::optional<VnAlgebra> noiseless;
    std::optional<AlgebraStructure> ns;
    if (ch.d_in() == ch.d_out()) {
        noiseless = noiseless_algebra(ch, tol);
        ns = structure(*noiseless, tol, opts.seed);
        Json jn = algebra_json(*noiseless, *ns, center(*noiseless, tol).dim());
        const double fixed = verify_fixed(ch, *noiseless);
        const double id_corr = verify_correction(ch, KrausChannel::identity(ch.d_in()), *noiseless);
        const double inside = mutual_containment(noiseless->basis(), intersect(noiseless->basis(),
                                                                               pkg.correctable.basis(), tol));
        jn["fixed_residual"] = fixed;
        jn["identity_correction_residual"] = id_corr;
        jn["containment_in_correctable_residual"] = inside;
        jn["pass"] = fixed <= eps && id_corr <= eps && inside <= eps;
        pass = pass && jn["pass"].get<bool>();
        rep["noiseless"] = std::move(jn);
    } else {
        rep["noiseless"] = nullptr;
    }

    Json jc;
    jc["d_in"] = pkg.correction.d_in();
    jc["d_out"] = pkg.correction.d_out();
    jc["kraus_count"] = pkg.correction.size();
    jc["support_rank"] = numerical_rank(pkg.support, tol);
    jc["tp_residual"] = validate(pkg.correction, tol).tp_residual;
    jc["choi_digest"] = rounded_digest(choi(pkg.correction));
    Json ks = Json::array();
    for (const auto& k : pkg.correction.kraus()) ks.push_back(matrix_to_json(k));
    jc["kraus"] = std::move(ks);
    rep["correction"] = std::move(jc);

    const double corr = verify_correction(ch, pkg.correction, pkg.correctable);
    const HomomorphismReport hom = homomorphism_residual(pkg);
    Json jv;
    jv["correction_residual"] = corr;
    jv["homomorphism_residual"] = hom.homomorphism;
    jv["faithful_residual"] = hom.faithful;
    jv["pass"] = corr <= eps && hom.homomorphism <= eps && hom.faithful <= eps;
    pass = pass && jv["pass"].get<bool>();
    rep["verification"] = std::move(jv);

    std::optional<std::size_t> first_code_dim;
    Json codes = Json::array();
    for (const auto& v : opts.isometries) {
        const RestrictedCode rc = restricted_code(ch, v, tol);
        const AlgebraStructure rs = structure(rc.a0, tol, opts.seed);
        Json jr;
        jr["isometry_digest"] = rounded_digest(Matrix(v * v.adjoint()));
        jr["d0"] = v.cols();
        jr["a0"] = algebra_json(rc.a0, rs, center(rc.a0, tol).dim());
        jr["s0_dim"] = rc.s0.size();
        jr["s0_is_algebra"] = rc.product_residual <= eps;
        jr["compression_residual"] = rc.compression_residual;
        jr["simultaneous_residual"] = rc.simultaneous_residual;
        jr["hermitian_residual"] = rc.hermitian_residual;
        const KlReport kl = check_kl(v, ch, tol);
        jr["kl"] = Json{{"residual", kl.residual}, {"pass", kl.passed}};
        if (opts.subsystem) {
            const SubsystemReport sr = check_subsystem(v, opts.subsystem->first, opts.subsystem->second, ch, tol);
            Json js;
            js["d_a"] = opts.subsystem->first;
            js["d_b"] = opts.subsystem->second;
            js["residual"] = sr.residual;
            js["pass"] = sr.passed;
            if (sr.passed) js["containment_residual"] = sr.containment_residual;
            jr["subsystem"] = std::move(js);
        }
        if (ch.d_in() == ch.d_out()) {
            const RestrictedNoiseless rn = check_restricted_noiseless(v, ch, tol);
            jr["restricted_noiseless"] = Json{{"dim", rn.algebra.dim()}, {"residual", rn.residual}};
        }
        const bool ok = rc.compression_residual <= eps && rc.simultaneous_residual <= eps && rc.hermitian_residual <= eps;
        jr["pass"] = ok;
        pass = pass && ok;
        if (!first_code_dim) first_code_dim = rc.a0.dim();
        codes.push_back(std::move(jr));
    }
    rep["restricted_codes"] = std::move(codes);

    if (doc.metadata.contains("expected") && doc.metadata["expected"].is_object()) {
        const Json& ex = doc.metadata["expected"];
        Json fc;
        bool all = true;
        auto check = [&](const char* key, const Json& actual) {
            if (!ex.contains(key)) return;
            fc[key] = match_json(ex[key], actual);
            all = all && fc[key]["match"].get<bool>();
        };
        check("correctable_dim", pkg.correctable.dim());
        check("structure", pattern_json(cs.pattern()));
        if (noiseless) {
            check("noiseless_dim", noiseless->dim());
            check("noiseless_structure", pattern_json(ns->pattern()));
        }
        if (first_code_dim) check("code_dim", *first_code_dim);
        fc["pass"] = all;
        pass = pass && all;
        rep["fixture_check"] = std::move(fc);
    }

    rep["pass"] = pass;
    return rep;
}

std::vector<std::string> fixture_names() { return {"type1", "rotation-analog", "bit-flip", "random-structured"}; }

LabeledFixture make_fixture(const std::string& name, const FixtureParams& p) {
    if (name == "type1") {
        std::vector<double> probs = p.probs;
        if (probs.empty()) probs.assign(static_cast<std::size_t>(p.m), 1.0 / p.m);
        return type1_code(p.d0, p.m, probs, p.d_total.value_or((p.m + 1) * p.d0), p.seed);
    }
    if (name == "rotation-analog") return rotation_analog(p.q, p.include_identity, p.seed);
    if (name == "bit-flip") return bit_flip_code(p.seed);
    if (name == "random-structured") return random_structured_channel(p.d, p.kraus, p.seed);
    throw std::out_of_range("unknown fixture '" + name + "'");
}

ChannelDocument fixture_document(const LabeledFixture& f, const FixtureParams& p) {
    Json meta;
    meta["name"] = f.name;
    meta["seed"] = p.seed;
    Json params;
    if (f.name == "type1") {
        params["d0"] = p.d0;
        params["m"] = p.m;
        params["d_total"] = f.channel.d_out();
        Json probs = Json::array();
        for (const auto& k : f.channel.kraus()) probs.push_back(k.squaredNorm() / static_cast<double>(p.d0));
        params["probs"] = std::move(probs);
    } else if (f.name == "rotation-analog") {
        params["q"] = p.q;
        params["include_identity"] = p.include_identity;
    } else if (f.name == "random-structured") {
        params["d"] = p.d;
        params["kraus"] = p.kraus;
    }
    meta["params"] = std::move(params);
    Json ex;
    ex["correctable_dim"] = f.expected_correctable_dim;
    ex["structure"] = pattern_json(f.expected_structure);
    if (f.expected_noiseless_dim) ex["noiseless_dim"] = *f.expected_noiseless_dim;
    if (f.expected_noiseless_structure) ex["noiseless_structure"] = pattern_json(*f.expected_noiseless_structure);
    if (f.expected_code_dim) ex["code_dim"] = *f.expected_code_dim;
    meta["expected"] = std::move(ex);
    meta["notes"] = f.notes;
    return ChannelDocument{std::string(kFormatVersion), f.channel, std::move(meta), std::nullopt};
}

namespace {

int cmd_validate(const std::string& path, std::optional<double> tol_flag, std::ostream& out) {
    const std::string text = read_file(path);
    const ChannelDocument doc = parse_channel_document(text);
    const Tolerance tol(tol_flag.value_or(doc.tolerance.value_or(1e-9)));
    const ValidationReport r = validate(doc.channel, tol);
    Json j;
    j["tp_residual"] = r.tp_residual;
    j["choi_min_eigenvalue"] = r.choi_min_eigen;
    j["tolerance"] = tol.eps();
    j["pass"] = r.passed;
    out << dump_canonical(j);
    return r.passed ? kExitPass : kExitFail;
}

int cmd_analyze(const std::string& path, std::optional<double> tol_flag, const std::vector<std::string>& isometry_paths,
                const std::vector<int>& subsystem, std::uint64_t seed, const std::string& out_path, std::ostream& out) {
    const std::string text = read_file(path);
    const ChannelDocument doc = parse_channel_document(text);
    AnalyzeOptions opts;
    opts.tolerance = tol_flag.value_or(doc.tolerance.value_or(1e-9));
    opts.seed = seed;
    for (const auto& ip : isometry_paths) opts.isometries.push_back(parse_matrix_document(read_file(ip)));
    if (!subsystem.empty()) {
        if (subsystem.size() != 2) throw ParseError("--subsystem takes exactly two integers");
        opts.subsystem = std::make_pair(subsystem[0], subsystem[1]);
    }
    const Json rep = analyze_channel(doc, text, opts);
    write_output(dump_canonical(rep), out_path, out);
    return rep["pass"].get<bool>() ? kExitPass : kExitFail;
}

int cmd_dilate(const std::string& path, double t, std::optional<int> env_index, std::optional<int> order_span,
               std::optional<double> tol_flag, bool no_compress, const std::string& out_path, std::ostream& out) {
    const HamiltonianDocument hd = parse_hamiltonian_document(read_file(path));
    const Tolerance tol(tol_flag.value_or(1e-9));
    if (!is_hermitian(hd.h_total, tol)) throw DomainError("Hamiltonian is not Hermitian");

    if (order_span) {
        const std::vector<Matrix> ops =
            hd.system_ops.empty() ? interaction_operators(hd.h_total, hd.d_sys, hd.d_env, tol) : hd.system_ops;
        const std::vector<std::size_t> dims = error_span_dims(ops, *order_span, tol);
        Json j;
        j["version"] = std::string(kFormatVersion);
        j["d_sys"] = hd.d_sys;
        j["interaction_count"] = ops.size();
        Json orders = Json::array();
        for (int n = 0; n <= *order_span; ++n) orders.push_back(n);
        j["orders"] = std::move(orders);
        j["dims"] = dims;
        write_output(dump_canonical(j), out_path, out);
        return kExitPass;
    }

    DilationModel dm;
    dm.h_total = hd.h_total;
    dm.t = t;
    dm.d_sys = hd.d_sys;
    dm.d_env = hd.d_env;
    if (env_index) {
        if (*env_index < 0 || *env_index >= hd.d_env) throw ParseError("--env-state index out of range");
        dm.psi_env = Vector::Zero(hd.d_env);
        dm.psi_env(*env_index) = 1.0;
    } else if (hd.env_state) {
        dm.psi_env = *hd.env_state;
    } else {
        dm.psi_env = Vector::Zero(hd.d_env);
        dm.psi_env(0) = 1.0;
    }
    KrausChannel ch = dilate_to_kraus(dm, std::nullopt, tol);
    if (!no_compress) ch = compress(ch, tol);
    Json meta;
    meta["name"] = "dilation";
    meta["t"] = t;
    meta["d_env"] = hd.d_env;
    meta["env_state"] = vector_to_json(dm.psi_env);
    write_output(dump_canonical(channel_document_json(ChannelDocument{std::string(kFormatVersion), ch, meta, {}})),
                 out_path, out);
    return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Correctable and noiseless operator algebras of finite-dimensional quantum channels", "oaqec"};
    app.require_subcommand(1);

    std::string path;
    std::string out_path;
    std::optional<double> tol_flag;
    std::uint64_t seed = 0;

    auto* validate_cmd = app.add_subcommand("validate", "Check trace preservation and complete positivity");
    validate_cmd->add_option("path", path, "Channel document")->required();
    validate_cmd->add_option("--tolerance", tol_flag, "Residual threshold");

    std::vector<std::string> isometry_paths;
    std::vector<int> subsystem;
    auto* analyze_cmd = app.add_subcommand("analyze", "Compute algebras, correction channel and residual report");
    analyze_cmd->add_option("path", path, "Channel document")->required();
    analyze_cmd->add_option("--tolerance", tol_flag, "Residual threshold");
    analyze_cmd->add_option("--isometry", isometry_paths, "Code isometry document (repeatable)");
    analyze_cmd->add_option("--subsystem", subsystem, "Factorization d_A d_B of the code space")->expected(2);
    analyze_cmd->add_option("--seed", seed, "Seed for the block decomposition");
    analyze_cmd->add_option("--out", out_path, "Write the report here instead of stdout");

    std::string fixture_name;
    FixtureParams fp;
    std::string probs_csv;
    std::optional<int> d_total;
    bool no_identity = false;
    std::string isometry_out;
    auto* fixture_cmd = app.add_subcommand("fixture", "Write a built-in channel document");
    fixture_cmd->add_option("name", fixture_name, "Fixture name")->required();
    fixture_cmd->add_option("--d0", fp.d0, "type1: code dimension");
    fixture_cmd->add_option("--m", fp.m, "type1: number of branches");
    fixture_cmd->add_option("--probs", probs_csv, "type1: comma separated branch probabilities");
    fixture_cmd->add_option("--d-total", d_total, "type1: output dimension");
    fixture_cmd->add_option("--q", fp.q, "rotation-analog: clock dimension");
    fixture_cmd->add_flag("--no-identity", no_identity, "rotation-analog: drop the identity Kraus term");
    fixture_cmd->add_option("--d", fp.d, "random-structured: dimension");
    fixture_cmd->add_option("--kraus", fp.kraus, "random-structured: Kraus count");
    fixture_cmd->add_option("--seed", fp.seed, "Seed");
    fixture_cmd->add_option("--out", out_path, "Output path (stdout when absent)");
    fixture_cmd->add_option("--isometry-out", isometry_out, "Also write the fixture's code isometry here");

    double t = 1.0;
    std::optional<int> env_index;
    std::optional<int> order_span;
    bool no_compress = false;
    auto* dilate_cmd = app.add_subcommand("dilate", "Kraus operators or error spans from a system-environment Hamiltonian");
    dilate_cmd->add_option("path", path, "Hamiltonian document")->required();
    dilate_cmd->add_option("--t", t, "Evolution time");
    dilate_cmd->add_option("--env-state", env_index, "Index of the initial environment basis state");
    dilate_cmd->add_option("--order-span", order_span, "Report error-span dimensions up to this order");
    dilate_cmd->add_option("--tolerance", tol_flag, "Residual threshold");
    dilate_cmd->add_flag("--no-compress", no_compress, "Keep all environment-indexed Kraus operators");
    dilate_cmd->add_option("--out", out_path, "Output path (stdout when absent)");

    std::vector<const char*> argv{"oaqec"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(path, tol_flag, out);
        if (*analyze_cmd) return cmd_analyze(path, tol_flag, isometry_paths, subsystem, seed, out_path, out);
        if (*dilate_cmd) return cmd_dilate(path, t, env_index, order_span, tol_flag, no_compress, out_path, out);
        if (*fixture_cmd) {
            const auto names = fixture_names();
            if (std::find(names.begin(), names.end(), fixture_name) == names.end()) {
                err << "unknown fixture '" << fixture_name << "'; available:";
                for (const auto& n : names) err << " " << n;
                err << "\n";
                return kExitUsage;
            }
            fp.include_identity = !no_identity;
            fp.d_total = d_total;
            if (!probs_csv.empty()) {
                std::stringstream ss(probs_csv);
                std::string item;
                while (std::getline(ss, item, ',')) fp.probs.push_back(std::stod(item));
            }
            const LabeledFixture f = make_fixture(fixture_name, fp);
            write_output(dump_canonical(channel_document_json(fixture_document(f, fp))), out_path, out);
            if (!isometry_out.empty()) {
                if (!f.encoding) throw ParseError("fixture '" + fixture_name + "' has no code isometry");
                write_output(dump_canonical(matrix_document_json(*f.encoding)), isometry_out, out);
            }
            return kExitPass;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "analysis failed: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitUsage;
}

}  // namespace oaqec
