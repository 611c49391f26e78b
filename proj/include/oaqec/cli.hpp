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

#ifndef OAQEC_CLI_HPP
#define OAQEC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oaqec/constructions.hpp"
#include "oaqec/serialize.hpp"

namespace oaqec {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2 };

struct AnalyzeOptions {
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    std::vector<Matrix> isometries;
    std::optional<std::pair<int, int>> subsystem;
};

/// Runs the full pipeline and returns the report; report["pass"] is the verdict.
Json analyze_channel(const ChannelDocument& doc, std::string_view raw_text, const AnalyzeOptions& opts);

struct FixtureParams {
    int d0 = 2;
    int m = 3;
    std::vector<double> probs;  ///< empty means uniform
    std::optional<int> d_total; ///< defaults to (m + 1) * d0
    int q = 2;
    bool include_identity = true;
    int d = 4;
    int kraus = 3;
    std::uint64_t seed = 1;
};

std::vector<std::string> fixture_names();
/// Throws std::out_of_range for unknown names.
LabeledFixture make_fixture(const std::string& name, const FixtureParams& params);
ChannelDocument fixture_document(const LabeledFixture& fixture, const FixtureParams& params);

/// Entry point of the `oaqec` tool. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oaqec

#endif
