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

#include "jcas/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <json.hpp>

#include "jcas/config.hpp"
#include "jcas/oracle_checks.hpp"

namespace jcas {

namespace {

const char* kUsage =
    "usage: jcas <single|sweep|figures|oracle-check> [options]\n"
    "  --config <path>    scenario config file (flat key = value)\n"
    "  --seed <N>         master seed (overrides config; env JCAS_SEED is the fallback)\n"
    "  --trials <N>       Monte-Carlo trials per sweep point\n"
    "  --out <dir>        output directory (default: out)\n"
    "  --set <key=value>  override a config key (repeatable)\n"
    "  --threads <N>      worker threads (default: machine cores)\n";

RunSettings load_settings(const CliConfig& cli)
{
    KeyValueMap map;
    if (!cli.config_path.empty())
        map = parse_config_file(cli.config_path);
    if (!map.count("seed")) {
        if (const char* env = std::getenv("JCAS_SEED"))
            map["seed"] = env;
    }
    apply_overrides(map, cli.overrides);
    if (cli.seed)
        map["seed"] = std::to_string(*cli.seed);
    if (cli.trials)
        map["trials"] = std::to_string(*cli.trials);
    return resolve_settings(map);
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

void write_sweep_outputs(const SweepResult& result, const RunSettings& settings,
                         const std::filesystem::path& dir, const std::string& stem)
{
    std::string hash = config_hash(settings);
    write_file(dir / (stem + ".csv"), sweep_to_csv(result, hash));
    write_file(dir / (stem + ".json"), settings_to_json(settings, hash));
}

int cmd_single(const CliConfig& cli, const RunSettings& settings)
{
    std::filesystem::create_directories(cli.output_dir);
    std::string hash = config_hash(settings);

    nlohmann::json rows = nlohmann::json::array();
    std::cout << "# seed=" << settings.system.seed << " config_hash=" << hash << "\n";
    std::cout << std::left << std::setw(16) << "scheme" << std::right << std::setw(12) << "mi_sens"
              << std::setw(12) << "mi_comm" << std::setw(12) << "rate_sens" << std::setw(12) << "rate_comm"
              << std::setw(10) << "rel_sens" << std::setw(10) << "rel_comm" << std::setw(10) << "weighted"
              << "\n";
    // one shared trial so the scheme rows are comparable
    RngStream trial_rng(derive_seed(settings.system.seed, {0}));
    TrialContext ctx = make_trial_context(settings.system, trial_rng);
    for (std::size_t si = 0; si < settings.schemes.size(); ++si) {
        RngStream scheme_rng = trial_rng.fork(100 + si);
        MIReport r = evaluate_scheme(settings.schemes[si], ctx, settings.system, scheme_rng);
        std::string label = scheme_label(settings.schemes[si]);
        std::cout << std::left << std::setw(16) << label << std::right << std::fixed
                  << std::setprecision(3) << std::setw(12) << r.mi_sensing << std::setw(12) << r.mi_comm
                  << std::setw(12) << r.rate_sensing << std::setw(12) << r.rate_comm << std::setw(10)
                  << r.rel_sensing << std::setw(10) << r.rel_comm << std::setw(10) << r.weighted << "\n";
        nlohmann::json row;
        row["scheme"] = label;
        row["mi_sensing"] = r.mi_sensing;
        row["mi_comm"] = r.mi_comm;
        row["rate_sensing"] = r.rate_sensing;
        row["rate_comm"] = r.rate_comm;
        row["rel_sensing"] = r.rel_sensing;
        row["rel_comm"] = r.rel_comm;
        row["weighted"] = r.weighted;
        rows.push_back(row);
    }

    nlohmann::json doc = nlohmann::json::parse(settings_to_json(settings, hash));
    doc["reports"] = rows;
    write_file(std::filesystem::path(cli.output_dir) / "single_report.json", doc.dump(2) + "\n");
    return kExitOk;
}

int cmd_sweep(const CliConfig& cli, const RunSettings& settings)
{
    SweepSpec spec = sweep_spec_from_settings(settings);
    std::filesystem::create_directories(cli.output_dir);
    SweepResult result = run_sweep(spec, cli.threads);
    write_sweep_outputs(result, settings, cli.output_dir, "sweep_" + sweep_axis_label(spec.axis));
    std::cout << "wrote " << cli.output_dir << "/sweep_" << sweep_axis_label(spec.axis) << ".csv ("
              << result.rows.size() << " rows)\n";
    return kExitOk;
}

struct CannedFigure
{
    std::string stem;
    SweepAxis axis;
    std::vector<double> values;
    std::vector<std::string> schemes;
    // protocol adjustments applied on top of the user config
    int l_train = 8;
    int l_total = 128;
    double eps_comm = 0.1;
    double eps_sens = 0.8;
    double comm_gain = 1.0;
    double sens_gain = 1.0;
};

int cmd_figures(const CliConfig& cli, const RunSettings& settings)
{
    std::filesystem::create_directories(cli.output_dir);

    const std::vector<std::string> all7 = {"OPTC", "OPTC_NO_CEE", "OPTS",          "JCAS",
                                           "EQUAL", "RANDOM",      "NO_POWER_ALLOC"};
    const std::vector<std::string> five = {"OPTC", "OPTS", "JCAS", "EQUAL", "RANDOM"};
    const std::vector<std::string> pair = {"JCAS", "EQUAL"};

    std::vector<CannedFigure> figs;
    figs.push_back({"fig3_comm_rate_vs_snr", SweepAxis::snr_db, parse_value_list("-10:2:20"), all7});
    figs.push_back({"fig4_sens_rate_vs_snr", SweepAxis::snr_db, parse_value_list("-10:2:20"), all7});
    {
        CannedFigure f{"fig5_comm_rate_vs_ratio", SweepAxis::train_ratio, parse_value_list("0.05:0.05:0.5"),
                       all7};
        f.l_total = 160;
        figs.push_back(f);
        f.stem = "fig6_sens_rate_vs_ratio";
        figs.push_back(f);
    }
    figs.push_back({"fig7_mi_vs_length", SweepAxis::total_length,
                    {10, 12, 16, 24, 32, 48, 64, 96, 128}, all7});
    {
        CannedFigure f{"fig8_relative_mi_vs_weight", SweepAxis::weight_w_r, parse_value_list("0:0.05:1"),
                       five};
        f.eps_comm = 0.8;
        f.eps_sens = 0.1;
        figs.push_back(f);
    }
    {
        CannedFigure f{"fig8_relative_mi_vs_eps", SweepAxis::eps_corr, parse_value_list("0:0.1:0.9"), five};
        f.eps_sens = 0.3;
        figs.push_back(f);
    }
    for (auto [stem, sh2, sg2] : {std::tuple<std::string, double, double>{"fig9_tradeoff", 1.0, 1.0},
                                  {"fig9_tradeoff_gains_07_13", 0.7, 1.3},
                                  {"fig9_tradeoff_gains_04_16", 0.4, 1.6}}) {
        CannedFigure f{stem, SweepAxis::weight_w_r, parse_value_list("0:0.05:1"), pair};
        f.eps_comm = 0.8;
        f.eps_sens = 0.3;
        f.comm_gain = sh2;
        f.sens_gain = sg2;
        figs.push_back(f);
    }

    for (std::size_t fi = 0; fi < figs.size(); ++fi) {
        const CannedFigure& f = figs[fi];
        RunSettings fig = settings;
        fig.system.l_train = f.l_train;
        fig.system.l_data = f.l_total - f.l_train;
        fig.system.eps_comm = f.eps_comm;
        fig.system.eps_sens = f.eps_sens;
        fig.system.comm_gain = f.comm_gain;
        fig.system.sens_gain = f.sens_gain;
        fig.system.total_energy = double(fig.system.l_total()) * fig.system.noise_power *
                                  std::pow(10.0, fig.snr_db / 10.0);
        fig.system.seed = derive_seed(settings.system.seed, {0xf19u, fi});
        fig.schemes.clear();
        for (const std::string& name : f.schemes)
            fig.schemes.push_back(scheme_from_string(name));
        fig.has_sweep = true;
        fig.sweep_axis = f.axis;
        fig.sweep_values = f.values;

        SweepSpec spec = sweep_spec_from_settings(fig);
        SweepResult result = run_sweep(spec, cli.threads);
        result.master_seed = settings.system.seed; // report the user-facing seed
        write_sweep_outputs(result, fig, cli.output_dir, f.stem);
        std::cout << "wrote " << cli.output_dir << "/" << f.stem << ".csv\n";
    }
    return kExitOk;
}

int cmd_oracle_check(const CliConfig&, const RunSettings& settings)
{
    auto start = std::chrono::steady_clock::now();
    std::vector<OracleOutcome> outcomes = run_oracle_checks(settings, std::cout);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "oracle checks finished in " << std::fixed << std::setprecision(1) << elapsed << " s\n";
    if (elapsed > 60.0)
        std::cerr << "warning: oracle checks exceeded the 60 s budget\n";

    for (const OracleOutcome& o : outcomes)
        if (!o.passed)
            return kExitOracleFailure;
    return kExitOk;
}

} // namespace

CliConfig parse_cli(int argc, const char* const* argv)
{
    CliConfig cli;
    if (argc < 2)
        throw std::invalid_argument(kUsage);
    cli.command = argv[1];
    if (cli.command != "single" && cli.command != "sweep" && cli.command != "figures" &&
        cli.command != "oracle-check")
        throw std::invalid_argument("unknown command '" + cli.command + "'\n" + kUsage);

    auto need_value = [&](int& i, const char* flag) -> std::string {
        if (i + 1 >= argc)
            throw std::invalid_argument(std::string("missing value for ") + flag + "\n" + kUsage);
        return argv[++i];
    };
    for (int i = 2; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--config")
            cli.config_path = need_value(i, "--config");
        else if (arg == "--seed")
            cli.seed = std::stoull(need_value(i, "--seed"));
        else if (arg == "--trials")
            cli.trials = std::stoi(need_value(i, "--trials"));
        else if (arg == "--out")
            cli.output_dir = need_value(i, "--out");
        else if (arg == "--set")
            cli.overrides.push_back(need_value(i, "--set"));
        else if (arg == "--threads")
            cli.threads = std::stoi(need_value(i, "--threads"));
        else
            throw std::invalid_argument("unknown option '" + arg + "'\n" + kUsage);
    }
    return cli;
}

int run_cli(int argc, const char* const* argv)
{
    CliConfig cli;
    RunSettings settings;
    try {
        cli = parse_cli(argc, argv);
        settings = load_settings(cli);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        if (cli.command == "single")
            return cmd_single(cli, settings);
        if (cli.command == "sweep")
            return cmd_sweep(cli, settings);
        if (cli.command == "figures")
            return cmd_figures(cli, settings);
        return cmd_oracle_check(cli, settings);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumericalError;
    }
}

} // namespace jcas
