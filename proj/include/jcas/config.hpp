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

#ifndef JCAS_CONFIG_HPP
#define JCAS_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jcas/sim_harness.hpp"

namespace jcas {

/**
 * Fully resolved run settings: the scenario, the scheme list, the trial
 * count, the canonical SNR, and the optional sweep section. Constructed
 * from a flat key=value config file plus --set overrides.
 */
struct RunSettings
{
    SystemConfig system;
    double snr_db = 1.0; // canonical energy spec; system.total_energy derives from it
    int trials = 500;
    std::vector<Scheme> schemes;

    bool has_sweep = false;
    SweepAxis sweep_axis = SweepAxis::snr_db;
    std::vector<double> sweep_values;

    std::string inject_fault = "none"; // oracle-check negative control
};

using KeyValueMap = std::map<std::string, std::string>;

// Parses `key = value` lines; '#' starts a comment; [section] headers
// prefix keys as section.key. Throws std::invalid_argument on bad syntax.
KeyValueMap parse_config_text(const std::string& text);

// Reads and parses a config file. Throws std::invalid_argument if the file
// is missing or malformed.
KeyValueMap parse_config_file(const std::string& path);

// Applies key=value override strings; every key must be known.
void apply_overrides(KeyValueMap& map, const std::vector<std::string>& overrides);

// Resolves the map into settings (unknown keys rejected, energy derived
// from SNR, l_total converted to l_data).
RunSettings resolve_settings(const KeyValueMap& map);

// "start:step:stop" (inclusive) or comma-separated list
std::vector<double> parse_value_list(const std::string& text);

// FNV-1a over the canonical serialized settings; 16 hex digits.
std::string config_hash(const RunSettings& settings);

// JSON document with the resolved configuration, seed and hash (sidecar body).
std::string settings_to_json(const RunSettings& settings, const std::string& hash);

SweepSpec sweep_spec_from_settings(const RunSettings& settings);

} // namespace jcas

#endif
