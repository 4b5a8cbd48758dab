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

#include "jcas/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace jcas {

namespace {

const std::set<std::string>& known_keys()
{
    static const std::set<std::string> keys = {
        "n_antennas", "l_train",     "l_data",       "l_total",      "snr_db",
        "total_energy", "noise_power", "comm_gain",  "sens_gain",    "eps_comm",
        "eps_sens",   "weight",      "seed",         "trials",       "schemes",
        "noise_exponent", "no_cee_all_data", "inject_fault", "sweep.axis", "sweep.values",
    };
    return keys;
}

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& value)
{
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' has non-numeric value '" + value + "'");
    }
}

long long to_int(const std::string& key, const std::string& value)
{
    double v = to_double(key, value);
    if (v != std::floor(v))
        throw std::invalid_argument("config: key '" + key + "' must be an integer");
    return static_cast<long long>(v);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(trim(item));
    return out;
}

} // namespace

KeyValueMap parse_config_text(const std::string& text)
{
    KeyValueMap map;
    std::stringstream ss(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config: malformed section header at line " +
                                            std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value at line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config: empty key at line " + std::to_string(lineno));
        if (!section.empty())
            key = section + "." + key;
        map[key] = value;
    }
    return map;
}

KeyValueMap parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_overrides(KeyValueMap& map, const std::vector<std::string>& overrides)
{
    for (const std::string& ov : overrides) {
        std::size_t eq = ov.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("override '" + ov + "' is not of the form key=value");
        std::string key = trim(ov.substr(0, eq));
        std::string value = trim(ov.substr(eq + 1));
        if (!known_keys().count(key))
            throw std::invalid_argument("override references unknown key '" + key + "'");
        map[key] = value;
    }
}

std::vector<double> parse_value_list(const std::string& text)
{
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts = split(text, ':');
        if (parts.size() != 3)
            throw std::invalid_argument("value range must be start:step:stop");
        double start = to_double("sweep.values", parts[0]);
        double step = to_double("sweep.values", parts[1]);
        double stop = to_double("sweep.values", parts[2]);
        if (!(step > 0.0))
            throw std::invalid_argument("value range step must be positive");
        for (int k = 0;; ++k) {
            double v = start + step * k;
            if (v > stop + 1e-12 * std::max(1.0, std::abs(stop)))
                break;
            out.push_back(v);
        }
        return out;
    }
    for (const std::string& item : split(text, ','))
        if (!item.empty())
            out.push_back(to_double("sweep.values", item));
    return out;
}

RunSettings resolve_settings(const KeyValueMap& map)
{
    for (const auto& [key, value] : map) {
        (void)value;
        if (!known_keys().count(key))
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }

    RunSettings s;
    auto get = [&](const char* key) -> std::optional<std::string> {
        auto it = map.find(key);
        if (it == map.end())
            return std::nullopt;
        return it->second;
    };

    if (auto v = get("n_antennas"))
        s.system.n_antennas = int(to_int("n_antennas", *v));
    if (auto v = get("l_train"))
        s.system.l_train = int(to_int("l_train", *v));
    if (auto v = get("l_data"))
        s.system.l_data = int(to_int("l_data", *v));
    if (auto v = get("l_total"))
        s.system.l_data = int(to_int("l_total", *v)) - s.system.l_train;
    if (auto v = get("noise_power"))
        s.system.noise_power = to_double("noise_power", *v);
    if (auto v = get("comm_gain"))
        s.system.comm_gain = to_double("comm_gain", *v);
    if (auto v = get("sens_gain"))
        s.system.sens_gain = to_double("sens_gain", *v);
    if (auto v = get("eps_comm"))
        s.system.eps_comm = to_double("eps_comm", *v);
    if (auto v = get("eps_sens"))
        s.system.eps_sens = to_double("eps_sens", *v);
    if (auto v = get("weight"))
        s.system.weight = to_double("weight", *v);
    if (auto v = get("seed"))
        s.system.seed = std::uint64_t(to_int("seed", *v));
    if (auto v = get("trials")) {
        s.trials = int(to_int("trials", *v));
        if (s.trials < 1)
            throw std::invalid_argument("config: trials must be >= 1");
    }

    if (auto v = get("noise_exponent")) {
        if (*v == "1")
            s.system.noise_exponent = NoiseExponent::one;
        else if (*v == "l_over_n")
            s.system.noise_exponent = NoiseExponent::l_over_n;
        else
            throw std::invalid_argument("config: noise_exponent must be 1 or l_over_n");
    }
    if (auto v = get("no_cee_all_data")) {
        if (*v == "true" || *v == "1")
            s.system.no_cee_all_power_to_data = true;
        else if (*v == "false" || *v == "0")
            s.system.no_cee_all_power_to_data = false;
        else
            throw std::invalid_argument("config: no_cee_all_data must be a boolean");
    }
    if (auto v = get("inject_fault")) {
        if (*v != "none" && *v != "noise_exponent")
            throw std::invalid_argument("config: inject_fault must be none or noise_exponent");
        s.inject_fault = *v;
    }

    // energy: an explicit total_energy wins, otherwise derive from SNR
    if (auto v = get("total_energy")) {
        s.system.total_energy = to_double("total_energy", *v);
        if (!(s.system.total_energy > 0.0))
            throw std::invalid_argument("config: total_energy must be positive");
        s.snr_db =
            10.0 * std::log10(s.system.total_energy / (double(s.system.l_total()) * s.system.noise_power));
    } else {
        if (auto w = get("snr_db"))
            s.snr_db = to_double("snr_db", *w);
        s.system.total_energy =
            double(s.system.l_total()) * s.system.noise_power * std::pow(10.0, s.snr_db / 10.0);
    }

    if (auto v = get("schemes")) {
        for (const std::string& name : split(*v, ','))
            if (!name.empty())
                s.schemes.push_back(scheme_from_string(name));
    }
    if (s.schemes.empty())
        s.schemes = {scheme_from_string("OPTC"),  scheme_from_string("OPTC_NO_CEE"),
                     scheme_from_string("OPTS"),  scheme_from_string("JCAS"),
                     scheme_from_string("EQUAL"), scheme_from_string("RANDOM"),
                     scheme_from_string("NO_POWER_ALLOC")};

    if (auto v = get("sweep.axis")) {
        s.has_sweep = true;
        s.sweep_axis = sweep_axis_from_string(*v);
        auto values = get("sweep.values");
        if (!values)
            throw std::invalid_argument("config: sweep.axis given without sweep.values");
        s.sweep_values = parse_value_list(*values);
    } else if (get("sweep.values")) {
        throw std::invalid_argument("config: sweep.values given without sweep.axis");
    }

    s.system.validate();
    return s;
}

SweepSpec sweep_spec_from_settings(const RunSettings& settings)
{
    if (!settings.has_sweep)
        throw std::invalid_argument("config: no sweep section");
    SweepSpec spec;
    spec.axis = settings.sweep_axis;
    spec.values = settings.sweep_values;
    spec.trials = settings.trials;
    spec.schemes = settings.schemes;
    spec.base = settings.system;
    spec.base_snr_db = settings.snr_db;
    spec.validate();
    return spec;
}

namespace {

nlohmann::json settings_json_body(const RunSettings& s)
{
    nlohmann::json j;
    j["n_antennas"] = s.system.n_antennas;
    j["l_train"] = s.system.l_train;
    j["l_data"] = s.system.l_data;
    j["l_total"] = s.system.l_total();
    j["snr_db"] = s.snr_db;
    j["total_energy"] = s.system.total_energy;
    j["noise_power"] = s.system.noise_power;
    j["comm_gain"] = s.system.comm_gain;
    j["sens_gain"] = s.system.sens_gain;
    j["eps_comm"] = s.system.eps_comm;
    j["eps_sens"] = s.system.eps_sens;
    j["weight"] = s.system.weight;
    j["seed"] = s.system.seed;
    j["trials"] = s.trials;
    j["noise_exponent"] = s.system.noise_exponent == NoiseExponent::one ? "1" : "l_over_n";
    j["no_cee_all_data"] = s.system.no_cee_all_power_to_data;
    nlohmann::json schemes = nlohmann::json::array();
    for (const Scheme& sc : s.schemes)
        schemes.push_back(scheme_label(sc));
    j["schemes"] = schemes;
    if (s.has_sweep) {
        j["sweep"]["axis"] = sweep_axis_label(s.sweep_axis);
        j["sweep"]["values"] = s.sweep_values;
    }
    return j;
}

} // namespace

std::string config_hash(const RunSettings& settings)
{
    std::string canon = settings_json_body(settings).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::string settings_to_json(const RunSettings& settings, const std::string& hash)
{
    nlohmann::json j;
    j["config"] = settings_json_body(settings);
    j["config_hash"] = hash;
    j["seed"] = settings.system.seed;
    return j.dump(2) + "\n";
}

} // namespace jcas
