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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oaqec/algebra.hpp"
#include "oaqec/channel.hpp"
#include "oaqec/cli.hpp"
#include "oaqec/constructions.hpp"
#include "oaqec/qec.hpp"
#include "oaqec/random.hpp"
#include "oaqec/serialize.hpp"

namespace {

using namespace oaqec;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Suite 1: random channels with a planted nontrivial correctable algebra,
// d in {2, 3, 4, 6, 8}, five seeds each, 2 to 5 Kraus operators.
struct SuiteChannel {
    int d;
    std::uint64_t seed;
    LabeledFixture fixture;
};

const std::vector<SuiteChannel>& suite1() {
    static const std::vector<SuiteChannel> suite = [] {
        std::vector<SuiteChannel> out;
        for (int d : {2, 3, 4, 6, 8}) {
            for (std::uint64_t s = 0; s < 5; ++s) {
                const std::uint64_t seed = 100 * static_cast<std::uint64_t>(d) + s;
                out.push_back({d, seed, random_structured_channel(d, 2 + static_cast<int>(s % 4), seed)});
            }
        }
        return out;
    }();
    return suite;
}

double max_commutator(const Matrix& p, const KrausChannel& ch) {
    double worst = 0.0;
    for (const auto& ei : ch.kraus()) {
        for (const auto& ej : ch.kraus()) {
            const Matrix g = ei.adjoint() * ej;
            worst = std::max(worst, (p * g - g * p).norm());
        }
    }
    return worst;
}

// Spectral projectors of a random Hermitian element of `alg`, all unions of
// eigenspaces with rank between 1 and d - 1.
std::vector<Matrix> algebra_projectors(const VnAlgebra& alg, Rng& rng) {
    const Eigen::Index d = alg.dim_h();
    const OperatorBasis herm = hermitian_basis(alg.basis().elements());
    Matrix h = Matrix::Zero(d, d);
    for (const auto& b : herm) h += rng.normal() * b;
    h = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    std::vector<Matrix> spaces;
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= d; ++i) {
        if (i == d || es.eigenvalues()(i) - es.eigenvalues()(i - 1) > 1e-6) {
            const Matrix v = es.eigenvectors().middleCols(start, i - start);
            spaces.push_back(v * v.adjoint());
            start = i;
        }
    }
    std::vector<Matrix> out;
    const std::size_t k = spaces.size();
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << k); ++mask) {
        Matrix p = Matrix::Zero(d, d);
        for (std::size_t b = 0; b < k; ++b) {
            if (mask & (std::size_t{1} << b)) p += spaces[b];
        }
        out.push_back(p);
    }
    return out;
}

Outcome criterion1() {
    double worst = 0.0;
    for (const auto& sc : suite1()) {
        const KrausChannel& ch = sc.fixture.channel;
        worst = std::max(worst, verify_correction(ch, correction_channel(ch), correctable_algebra(ch)));
    }
    return {worst <= 1e-8, fmt("max verify_correction %.3e over %zu channels (tol 1e-8)", worst, suite1().size())};
}

Outcome criterion2() {
    // B = E_lambda(1)^{-1} E_lambda(P) with lambda_i = 2^{-i}, inverted on the support.
    Rng rng(2024);
    int checked = 0;
    int correctable = 0;
    int mismatches = 0;
    double worst_gap = 0.0;
    for (const auto& sc : suite1()) {
        if (sc.d > 4) continue;
        const KrausChannel& ch = sc.fixture.channel;
        const Eigen::Index d = ch.d_in();
        const std::vector<double> lam = geometric_weights(ch.size());
        const Matrix e1 = weighted_output_effect(ch, lam);
        const Matrix pinv = inv_sqrt_on_support(e1, Tolerance()) * inv_sqrt_on_support(e1, Tolerance());
        auto e_lambda = [&](const Matrix& p) {
            Matrix s = Matrix::Zero(ch.d_out(), ch.d_out());
            for (std::size_t i = 0; i < ch.size(); ++i) s += lam[i] * ch[i] * p * ch[i].adjoint();
            return s;
        };

        std::vector<Matrix> candidates = algebra_projectors(correctable_algebra(ch), rng);
        for (Eigen::Index r = 1; r < d; ++r) {
            for (int t = 0; t < 4; ++t) {
                const Matrix v = rng.isometry(d, r);
                candidates.push_back(v * v.adjoint());
            }
        }
        for (const auto& p : candidates) {
            const Matrix b = pinv * e_lambda(p);
            const double ansatz = (apply_dual(ch, b) - p).norm();
            const double comm = max_commutator(p, ch);
            const bool a_ok = ansatz <= 1e-8;
            const bool c_ok = comm <= 1e-8;
            ++checked;
            if (a_ok) ++correctable;
            if (a_ok != c_ok) ++mismatches;
            worst_gap = std::max(worst_gap, a_ok ? comm : (c_ok ? ansatz : 0.0));
        }
    }
    return {mismatches == 0 && correctable > 0 && correctable < checked,
            fmt("%d projectors (%d correctable), %d disagreements between ansatz and commutation test; "
                "max residual on agreeing side %.3e (tol 1e-8)",
                checked, correctable, mismatches, worst_gap)};
}

Outcome criterion3() {
    const Tolerance tol;
    int bad = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const int d = 2 + static_cast<int>(seed % 7);
        const BlockGenerators bg = random_block_generators(d, 2, 300 + seed);
        const VnAlgebra alg = generated_algebra(bg.gens, d, tol);
        const AlgebraStructure s = structure(alg, tol, seed);
        const VnAlgebra comm = commutant(bg.gens, d, tol);
        if (s.sum_n_squared() != static_cast<int>(alg.dim()) || s.sum_nm() != d ||
            static_cast<int>(comm.dim()) != s.sum_m_squared()) {
            ++bad;
        }
    }
    // (M_2 (x) 1_2) (+) M_3 on C^7.
    std::vector<Matrix> units;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Matrix m = Matrix::Zero(7, 7);
            m.block(2 * i, 2 * j, 2, 2) = identity(2);
            units.push_back(m);
        }
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Matrix m = Matrix::Zero(7, 7);
            m(4 + i, 4 + j) = 1.0;
            units.push_back(m);
        }
    }
    const VnAlgebra ex = VnAlgebra::from_basis(7, orthonormalize(units, tol), tol);
    const AlgebraStructure s = structure(ex, tol, 0);
    const VnAlgebra comm = commutant(ex.basis().elements(), 7, tol);
    const bool ex_ok = s.pattern() == BlockPattern{{2, 2}, {3, 1}} && s.sum_n_squared() == 13 && comm.dim() == 5;
    return {bad == 0 && ex_ok, fmt("%d/25 generated algebras violate the identities; worked example blocks %s, D=%d, "
                                   "commutant dim %zu",
                                   bad, ex_ok ? "[(2,2),(3,1)]" : "WRONG", s.sum_n_squared(), comm.dim())};
}

Outcome criterion4() {
    const Tolerance tol;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const int d = 2 + static_cast<int>(seed % 7);
        std::vector<Matrix> gens;
        if (seed % 5 == 4) {
            Rng rng(seed);
            gens = {rng.ginibre(d, d)};  // generic single generator
        } else {
            gens = random_block_generators(d, 1 + static_cast<int>(seed % 3), 400 + seed).gens;
        }
        const VnAlgebra a = generated_algebra(gens, d, tol);
        const VnAlgebra c = commutant(gens, d, tol);
        const VnAlgebra cc = commutant(c.basis().elements(), d, tol);
        worst = std::max(worst, mutual_containment(a, cc));
    }
    return {worst <= 1e-8, fmt("max mutual containment residual %.3e over 25 generator sets (tol 1e-8)", worst)};
}

Outcome criterion5() {
    const Tolerance tol;
    const auto uni = type1_code(2, 3, {1.0 / 3, 1.0 / 3, 1.0 / 3}, 8, 1);
    const auto skew = type1_code(2, 3, {0.7, 0.2, 0.1}, 8, 1);
    const std::size_t dim = correctable_algebra(uni.channel, tol).dim();
    const std::size_t dim2 = correctable_algebra(skew.channel, tol).dim();
    const double dist = choi_distance(correction_channel(uni.channel, {}, tol), correction_channel(skew.channel, {}, tol));
    return {dim == 4 && dim2 == 4 && dist <= 1e-10,
            fmt("correctable dims %zu/%zu (expect 4); correction Choi distance %.3e (tol 1e-10)", dim, dim2, dist)};
}

Outcome criterion6() {
    const Tolerance tol;
    bool ok = true;
    std::string detail;
    for (int q = 2; q <= 4; ++q) {
        const auto f = rotation_analog(q, true, static_cast<std::uint64_t>(q));
        const VnAlgebra n = noiseless_algebra(f.channel, tol);
        const bool factor = is_factor(n, tol);
        const double fixed = verify_fixed(f.channel, n);
        const double idc = verify_correction(f.channel, KrausChannel::identity(q * q), n);
        ok = ok && n.dim() == static_cast<std::size_t>(q * q) && factor && fixed <= 1e-9 && idc <= 1e-9;
        detail += fmt("q=%d dim %zu factor %s fixed %.1e; ", q, n.dim(), factor ? "yes" : "no", std::max(fixed, idc));
    }
    return {ok, detail + "(tol 1e-9)"};
}

Outcome criterion7() {
    const Tolerance tol;
    double alg = 0.0;
    double corr = 0.0;
    int runs = 0;
    for (const auto& sc : suite1()) {
        const KrausChannel& ch = sc.fixture.channel;
        const VnAlgebra a = correctable_algebra(ch, tol);
        const KrausChannel r = correction_channel(ch, {}, tol);
        Rng rng(sc.seed + 7);
        for (int g = 0; g < 5; ++g) {
            const auto k = static_cast<Eigen::Index>(ch.size());
            const Matrix gamma = rng.isometry(k + g % 3, k);
            const KrausChannel mixed = remix(ch, gamma);
            alg = std::max(alg, mutual_containment(a, correctable_algebra(mixed, tol)));
            corr = std::max(corr, verify_correction(mixed, r, a));
            ++runs;
        }
    }
    return {alg <= 1e-8 && corr <= 1e-8,
            fmt("%d remixes: algebra residual %.3e, original-correction residual %.3e (tol 1e-8)", runs, alg, corr)};
}

Outcome criterion8() {
    const Tolerance tol;
    double hom = 0.0;
    double faith = 0.0;
    for (const auto& sc : suite1()) {
        const HomomorphismReport r = homomorphism_residual(make_correction_package(sc.fixture.channel, {}, tol));
        hom = std::max(hom, r.homomorphism);
        faith = std::max(faith, r.faithful);
    }
    return {hom <= 1e-8 && faith <= 1e-8,
            fmt("homomorphism %.3e, faithful representation %.3e (tol 1e-8)", hom, faith)};
}

Outcome criterion9() {
    const Tolerance tol;
    const auto bf = bit_flip_code(1);
    const KlReport kl = check_kl(*bf.encoding, bf.channel, tol);

    // Noise acting on the B factor only: E_i = 1_A (x) K_i.
    const KrausChannel kb = random_channel(3, 3, 3, 99);
    std::vector<Matrix> ks;
    for (const auto& k : kb.kraus()) ks.push_back(kron(identity(2), k));
    const SubsystemReport sub = check_subsystem(identity(6), 2, 3, KrausChannel(ks), tol);
    double lambda_err = 0.0;
    for (std::size_t i = 0; i < kb.size(); ++i) {
        for (std::size_t j = 0; j < kb.size(); ++j) {
            lambda_err = std::max(lambda_err, (sub.at(i, j) - kb[i].adjoint() * kb[j]).norm());
        }
    }

    // Broken code: span{|000>, |001>} is not protected against a flip of qubit 3.
    Matrix broken = Matrix::Zero(8, 2);
    broken(0, 0) = 1.0;
    broken(1, 1) = 1.0;
    const KlReport bad = check_kl(broken, bf.channel, tol);

    const bool ok = kl.passed && kl.residual <= 1e-9 && sub.passed && sub.residual <= 1e-9 && lambda_err <= 1e-9 &&
                    !bad.passed && bad.residual >= 0.1;
    return {ok, fmt("bit-flip KL %.3e; subsystem %.3e, Lambda error %.3e (tol 1e-9); broken code residual %.3f "
                    "(need >= 0.1)",
                    kl.residual, sub.residual, lambda_err, bad.residual)};
}

Outcome criterion10(std::string& note) {
    const Tolerance tol;
    double worst = 0.0;
    double on_algebra = 0.0;
    int failing = 0;
    for (const auto& sc : suite1()) {
        const KrausChannel& ch = sc.fixture.channel;
        const KrausChannel ones = correction_channel(ch, {}, tol);
        const KrausChannel geo = correction_channel(ch, geometric_weights(ch.size()), tol);
        const double dist = choi_distance(ones, geo);
        worst = std::max(worst, dist);
        if (dist > 1e-9) ++failing;
        // Where the weights provably drop out: R*(A) on the output support.
        const VnAlgebra a = correctable_algebra(ch, tol);
        const Matrix s = output_support(ch, tol);
        for (const auto& x : a.basis()) {
            on_algebra = std::max(on_algebra, ((apply_dual(ones, x) - apply_dual(geo, x)) * s).norm());
        }
    }
    note = fmt("R*(A) restricted to the output support agrees to %.3e for every A in the correctable algebra",
               on_algebra);
    return {worst <= 1e-9, fmt("max Choi distance %.3e; %d/%zu channels above tol 1e-9", worst, failing,
                               suite1().size())};
}

Outcome criterion11() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "oaqec_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto cli = [](const std::vector<std::string>& args, std::string* out) {
        std::ostringstream o;
        std::ostringstream e;
        const int code = run_cli(args, o, e);
        if (out) *out = o.str();
        return code;
    };

    struct Case {
        std::vector<std::string> fixture_args;
        bool with_isometry;
    };
    const std::vector<Case> cases{
        {{"type1", "--d0", "2", "--m", "3", "--d-total", "8"}, false},
        {{"type1", "--d0", "2", "--m", "3", "--probs", "0.7,0.2,0.1", "--d-total", "8"}, false},
        {{"rotation-analog", "--q", "2"}, false},
        {{"rotation-analog", "--q", "3", "--no-identity"}, false},
        {{"bit-flip"}, true},
        {{"random-structured", "--d", "6", "--kraus", "3", "--seed", "4"}, false},
        {{"random-structured", "--d", "8", "--kraus", "4", "--seed", "9"}, false},
    };
    int ok = 0;
    double worst = 0.0;
    std::string failed;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const std::string doc = (dir / ("f" + std::to_string(c) + ".json")).string();
        const std::string iso = (dir / ("v" + std::to_string(c) + ".json")).string();
        std::vector<std::string> fargs{"fixture"};
        fargs.insert(fargs.end(), cases[c].fixture_args.begin(), cases[c].fixture_args.end());
        fargs.insert(fargs.end(), {"--out", doc});
        if (cases[c].with_isometry) fargs.insert(fargs.end(), {"--isometry-out", iso});
        if (cli(fargs, nullptr) != 0) {
            failed += " fixture:" + cases[c].fixture_args[0];
            continue;
        }
        std::vector<std::string> aargs{"analyze", doc, "--seed", "3"};
        if (cases[c].with_isometry) aargs.insert(aargs.end(), {"--isometry", iso});
        std::string first;
        std::string second;
        const int code = cli(aargs, &first);
        cli(aargs, &second);
        const Json rep = parse_json(first);
        const bool fixture_ok = rep.contains("fixture_check") && rep["fixture_check"]["pass"].get<bool>();
        const Json& v = rep["verification"];
        const double res = std::max({v["correction_residual"].get<double>(), v["homomorphism_residual"].get<double>(),
                                     v["faithful_residual"].get<double>()});
        worst = std::max(worst, res);
        if (code == 0 && fixture_ok && res <= 1e-8 && first == second) {
            ++ok;
        } else {
            failed += " analyze:" + cases[c].fixture_args[0];
        }
    }
    fs::remove_all(dir);
    return {ok == static_cast<int>(cases.size()),
            fmt("%d/%zu fixtures round-trip with exact integer fields and byte-identical reports; max residual %.3e "
                "(tol 1e-8)%s",
                ok, cases.size(), worst, failed.c_str())};
}

}  // namespace

int main() {
    struct Item {
        int id;
        const char* name;
        std::function<Outcome(std::string&)> run;
    };
    const std::vector<Item> items{
        {1, "correction soundness", [](std::string&) { return criterion1(); }},
        {2, "sharp-effect completeness (d <= 4)", [](std::string&) { return criterion2(); }},
        {3, "block-structure identities", [](std::string&) { return criterion3(); }},
        {4, "double commutant", [](std::string&) { return criterion4(); }},
        {5, "type-I code, probability-independent correction", [](std::string&) { return criterion5(); }},
        {6, "clock-shift analog noiseless factor", [](std::string&) { return criterion6(); }},
        {7, "remix robustness", [](std::string&) { return criterion7(); }},
        {8, "homomorphism and faithful representation", [](std::string&) { return criterion8(); }},
        {9, "KL and subsystem checkers", [](std::string&) { return criterion9(); }},
        {10, "lambda-independence of the correction Choi matrix", criterion10},
        {11, "CLI round trip", [](std::string&) { return criterion11(); }},
    };
    int failures = 0;
    for (const auto& it : items) {
        std::string note;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = it.run(note);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        std::printf("%s  [%2d] %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", it.id, it.name, o.detail.c_str(), secs);
        if (!note.empty()) std::printf("      note: %s\n", note.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(items.size()) - failures, items.size());
    return failures == 0 ? 0 : 1;
}
