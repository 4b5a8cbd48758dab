// SPDX-License-Identifier: Apache-2.0
//
// jcas-sim: MI-optimal waveform design for MIMO joint communication and sensing
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef JCAS_CLI_HPP
#define JCAS_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace jcas {

// exit codes: 0 success, 1 oracle failure, 2 config error, 3 numerical error
constexpr int kExitOk = 0;
constexpr int kExitOracleFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

struct CliConfig
{
    std::string command; // single | sweep | figures | oracle-check
    std::string config_path;
    std::string output_dir = "out";
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    int threads = 0; // 0 = hardware concurrency
};

// Parses argv; throws std::invalid_argument with a usage message on errors.
CliConfig parse_cli(int argc, const char* const* argv);

// Full entry point used by main(); never throws.
int run_cli(int argc, const char* const* argv);

} // namespace jcas

#endif
