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

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "jcas/cli.hpp"
#include "jcas/config.hpp"

using namespace jcas;
namespace fs = std::filesystem;

namespace {

int run(std::initializer_list<const char*> args)
{
    std::vector<const char*> argv{"jcas"};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_cli(int(argv.size()), argv.data());
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir
{
    fs::path path;
    TempDir(const std::string& name) : path(fs::temp_directory_path() / name)
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("config text parsing")
{
    KeyValueMap map = parse_config_text("# comment\nn_antennas = 4\n[sweep]\naxis= snr_db\n"
                                        "values = -2:2:2\n");
    REQUIRE(map.at("n_antennas") == "4");
    REQUIRE(map.at("sweep.axis") == "snr_db");
    RunSettings s = resolve_settings(map);
    REQUIRE(s.system.n_antennas == 4);
    REQUIRE(s.has_sweep);
    REQUIRE(s.sweep_values == std::vector<double>{-2.0, 0.0, 2.0});

    REQUIRE_THROWS_AS(parse_config_text("novalue\n"), std::invalid_argument);
    REQUIRE_THROWS_AS(resolve_settings(parse_config_text("bogus_key = 1\n")), std::invalid_argument);
}

TEST_CASE("settings resolution derives energy from SNR and back")
{
    RunSettings a = resolve_settings(parse_config_text("snr_db = 1\nl_total = 128\n"));
    REQUIRE(a.system.total_energy == Catch::Approx(128.0 * std::pow(10.0, 0.1)).margin(1e-9));
    REQUIRE(a.system.l_data == 120);

    RunSettings b = resolve_settings(parse_config_text("total_energy = 128\nl_total = 128\n"));
    REQUIRE(b.snr_db == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("override handling")
{
    KeyValueMap map;
    apply_overrides(map, {"snr_db=3", "trials=7"});
    REQUIRE(map.at("snr_db") == "3");
    REQUIRE_THROWS_AS(apply_overrides(map, {"unknown_key=1"}), std::invalid_argument);
    REQUIRE_THROWS_AS(apply_overrides(map, {"missing_equals"}), std::invalid_argument);
}

TEST_CASE("config hash is stable and sensitive")
{
    RunSettings a = resolve_settings(parse_config_text("snr_db = 1\n"));
    RunSettings b = resolve_settings(parse_config_text("snr_db = 1\n"));
    RunSettings c = resolve_settings(parse_config_text("snr_db = 2\n"));
    REQUIRE(config_hash(a) == config_hash(b));
    REQUIRE(config_hash(a) != config_hash(c));
    REQUIRE(config_hash(a).size() == 16);
}

TEST_CASE("missing config file exits with the config error code")
{
    REQUIRE(run({"single", "--config", "/nonexistent/path.toml"}) == kExitConfigError);
}

TEST_CASE("bad arguments exit with the config error code")
{
    REQUIRE(run({}) == kExitConfigError);
    REQUIRE(run({"notacommand"}) == kExitConfigError);
    REQUIRE(run({"single", "--bogus"}) == kExitConfigError);
    REQUIRE(run({"single", "--set", "nope=1"}) == kExitConfigError);
}

TEST_CASE("a degenerate scenario maps to the numerical error code")
{
    TempDir dir("jcas_cli_numeric");
    // sensing gain below the eigenvalue clamp: every sensing mode is zero
    REQUIRE(run({"single", "--out", dir.path.string().c_str(), "--set", "sens_gain=1e-300"}) ==
            kExitNumericalError);
}

TEST_CASE("single command writes a report with override metadata")
{
    TempDir dir("jcas_cli_single");
    REQUIRE(run({"single", "--out", dir.path.string().c_str(), "--seed", "3", "--set", "snr_db=1",
                 "--set", "trials=1"}) == kExitOk);
    std::string json = slurp(dir.path / "single_report.json");
    REQUIRE(json.find("\"snr_db\": 1.0") != std::string::npos);
    REQUIRE(json.find("\"seed\": 3") != std::string::npos);
    REQUIRE(json.find("\"reports\"") != std::string::npos);
}

TEST_CASE("sweep command requires a sweep section")
{
    TempDir dir("jcas_cli_sweep");
    REQUIRE(run({"sweep", "--out", dir.path.string().c_str()}) == kExitConfigError);

    fs::path cfg = dir.path / "sweep.toml";
    std::ofstream(cfg) << "trials = 2\nschemes = OPTC,OPTS\n[sweep]\naxis = snr_db\nvalues = -2:4:6\n";
    REQUIRE(run({"sweep", "--config", cfg.string().c_str(), "--out", dir.path.string().c_str(),
                 "--seed", "11"}) == kExitOk);
    std::string csv = slurp(dir.path / "sweep_snr_db.csv");
    REQUIRE(csv.find("# seed=11") == 0);
    REQUIRE(csv.find("snr_db,-2,OPTC,") != std::string::npos);
    REQUIRE(csv.find("snr_db,6,OPTS,") != std::string::npos);
    REQUIRE(fs::exists(dir.path / "sweep_snr_db.json"));
}

TEST_CASE("oracle check passes clean and fails under an injected fault")
{
    TempDir dir("jcas_cli_oracle");
    // noise_power != 1 so an exponent mismatch is actually visible
    REQUIRE(run({"oracle-check", "--set", "noise_power=1.5"}) == kExitOk);
    REQUIRE(run({"oracle-check", "--set", "noise_power=1.5", "--set", "inject_fault=noise_exponent"}) ==
            kExitOracleFailure);
}

TEST_CASE("figures honors trials and threads flags deterministically")
{
    TempDir a("jcas_cli_figs_a");
    TempDir b("jcas_cli_figs_b");
    // tiny trial count keeps this a smoke test; byte-identity is the point
    REQUIRE(run({"figures", "--out", a.path.string().c_str(), "--seed", "42", "--trials", "2",
                 "--threads", "1"}) == kExitOk);
    REQUIRE(run({"figures", "--out", b.path.string().c_str(), "--seed", "42", "--trials", "2",
                 "--threads", "3"}) == kExitOk);
    for (const char* stem : {"fig3_comm_rate_vs_snr", "fig9_tradeoff"}) {
        std::string csv_a = slurp(a.path / (std::string(stem) + ".csv"));
        std::string csv_b = slurp(b.path / (std::string(stem) + ".csv"));
        REQUIRE(csv_a == csv_b);
    }

    // fig3 covers the -10..20 dB grid in 2 dB steps
    std::string fig3 = slurp(a.path / "fig3_comm_rate_vs_snr.csv");
    for (int snr = -10; snr <= 20; snr += 2)
        REQUIRE(fig3.find("\nsnr_db," + std::to_string(snr) + ",OPTC,") != std::string::npos);

    // trade-off rows run from w_r = 0 to w_r = 1 in order
    std::string fig9 = slurp(a.path / "fig9_tradeoff.csv");
    std::size_t first = fig9.find("\nweight_w_r,0,");
    std::size_t last = fig9.find("\nweight_w_r,1,");
    REQUIRE(first != std::string::npos);
    REQUIRE(last != std::string::npos);
    REQUIRE(first < last);
}

TEST_CASE("environment seed is a fallback only")
{
    TempDir dir("jcas_cli_env");
    ::setenv("JCAS_SEED", "555", 1);
    REQUIRE(run({"single", "--out", dir.path.string().c_str()}) == kExitOk);
    REQUIRE(slurp(dir.path / "single_report.json").find("\"seed\": 555") != std::string::npos);

    REQUIRE(run({"single", "--out", dir.path.string().c_str(), "--seed", "7"}) == kExitOk);
    REQUIRE(slurp(dir.path / "single_report.json").find("\"seed\": 7") != std::string::npos);
    ::unsetenv("JCAS_SEED");
}
