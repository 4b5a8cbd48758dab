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

#include "jcas/sim_harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace jcas {

namespace {

// fork tags for the per-purpose streams inside one trial
constexpr std::uint64_t kStreamCorrComm = 0;
constexpr std::uint64_t kStreamCorrSens = 1;
constexpr std::uint64_t kStreamAlloc = 2;

double resolve_w_r(const Scheme& scheme, const SystemConfig& config)
{
    if (scheme.kind != SchemeKind::jcas)
        return config.weight;
    return scheme.w_r < 0.0 ? config.weight : scheme.w_r;
}

} // namespace

std::string scheme_label(const Scheme& s)
{
    switch (s.kind) {
    case SchemeKind::optc:
        return "OPTC";
    case SchemeKind::optc_no_cee:
        return "OPTC_NO_CEE";
    case SchemeKind::opts:
        return "OPTS";
    case SchemeKind::jcas:
        return s.w_r < 0.0 ? "JCAS" : "JCAS(" + format_double(s.w_r) + ")";
    case SchemeKind::equal:
        return "EQUAL";
    case SchemeKind::random_alloc:
        return "RANDOM";
    case SchemeKind::no_power_alloc:
        return "NO_POWER_ALLOC";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& name)
{
    if (name == "OPTC")
        return {SchemeKind::optc, -1.0};
    if (name == "OPTC_NO_CEE")
        return {SchemeKind::optc_no_cee, -1.0};
    if (name == "OPTS")
        return {SchemeKind::opts, -1.0};
    if (name == "EQUAL")
        return {SchemeKind::equal, -1.0};
    if (name == "RANDOM")
        return {SchemeKind::random_alloc, -1.0};
    if (name == "NO_POWER_ALLOC")
        return {SchemeKind::no_power_alloc, -1.0};
    if (name == "JCAS")
        return {SchemeKind::jcas, -1.0};
    if (name.rfind("JCAS(", 0) == 0 && name.back() == ')') {
        double w = std::stod(name.substr(5, name.size() - 6));
        if (w < 0.0 || w > 1.0)
            throw std::invalid_argument("scheme: JCAS weight must lie in [0, 1]");
        return {SchemeKind::jcas, w};
    }
    throw std::invalid_argument("scheme: unknown name '" + name + "'");
}

TrialContext make_trial_context(const SystemConfig& config, RngStream& rng)
{
    config.validate();

    TrialContext ctx;
    RngStream comm_stream = rng.fork(kStreamCorrComm);
    RngStream sens_stream = rng.fork(kStreamCorrSens);
    ctx.sigma_h = gen_correlation(config.n_antennas, config.eps_comm, 1.0, comm_stream);
    ctx.sigma_g = gen_correlation(config.n_antennas, config.eps_sens, config.sens_gain, sens_stream);
    ctx.lambda = ctx.sigma_g.decomposition.eigenvalues;
    ctx.mu = ctx.sigma_h.decomposition.eigenvalues;

    ctx.split = optimal_kappa(config.n_antennas, config.l_data, config.total_energy, config.noise_power,
                              config.comm_gain);
    ctx.noise_div = config.sensing_noise_div();

    ctx.opt_sensing =
        optimize_sensing(ctx.lambda, ctx.split.p_train, ctx.split.p_data, ctx.noise_div, config.n_antennas);
    ctx.opt_sensing.allocation.basis = ctx.sigma_g.decomposition.basis;
    ctx.f_r = ctx.opt_sensing.objective;

    ctx.opt_comm = optimize_comm(ctx.mu, ctx.split.p_data, ctx.split.cee_per_coeff, config.noise_power,
                                 config.comm_gain, config.l_data);
    ctx.opt_comm.allocation.basis = ctx.sigma_h.decomposition.basis;
    ctx.f_c = ctx.opt_comm.objective;
    return ctx;
}

SchemeEvaluation build_scheme_allocation(const Scheme& scheme, const TrialContext& ctx,
                                         const SystemConfig& config, RngStream& rng)
{
    const int n = config.n_antennas;
    SchemeEvaluation ev;
    ev.split = ctx.split;
    ev.cee_eval = ctx.split.cee_per_coeff;
    ev.w_r_eval = resolve_w_r(scheme, config);

    switch (scheme.kind) {
    case SchemeKind::optc:
        ev.allocation = ctx.opt_comm.allocation;
        break;
    case SchemeKind::opts:
        ev.allocation = ctx.opt_sensing.allocation;
        break;
    case SchemeKind::optc_no_cee: {
        if (config.no_cee_all_power_to_data) {
            // alternative convention: the no-CEE link spends nothing on training
            ev.split = PowerSplit{1.0, 0.0, config.total_energy, double(n) * config.comm_gain,
                                  config.comm_gain, std::numeric_limits<double>::infinity()};
        }
        WaveformSolution sol = optimize_comm(ctx.mu, ev.split.p_data, 0.0, config.noise_power,
                                             config.comm_gain, config.l_data);
        ev.allocation = sol.allocation;
        ev.allocation.basis = ctx.sigma_h.decomposition.basis;
        ev.cee_eval = 0.0;
        break;
    }
    case SchemeKind::jcas: {
        WaveformSolution sol = optimize_weighted(ev.w_r_eval, ctx.f_r, ctx.f_c, ctx.lambda, ctx.mu,
                                                 ctx.split.p_train, ctx.split.p_data, ctx.noise_div,
                                                 config.noise_power, config.comm_gain,
                                                 ctx.split.cee_per_coeff, config.l_data, n);
        ev.allocation = sol.allocation;
        ev.allocation.basis = ctx.sigma_g.decomposition.basis;
        break;
    }
    case SchemeKind::equal:
        ev.allocation.energies = arma::vec(n, arma::fill::value(ctx.split.p_data / double(n)));
        ev.allocation.budget = ctx.split.p_data;
        ev.allocation.basis = ctx.sigma_g.decomposition.basis;
        break;
    case SchemeKind::random_alloc: {
        // uniform on the simplex via exponential spacings, scaled to the budget
        arma::vec x(n);
        for (int i = 0; i < n; ++i)
            x(i) = -std::log(1.0 - rng.uniform());
        x *= ctx.split.p_data / arma::accu(x);
        double head = arma::accu(x) - x(n - 1);
        x(n - 1) = ctx.split.p_data - head; // exact budget
        ev.allocation.energies = x;
        ev.allocation.budget = ctx.split.p_data;
        ev.allocation.basis = ctx.sigma_g.decomposition.basis;
        break;
    }
    case SchemeKind::no_power_alloc: {
        double kappa = double(config.l_data) / double(config.l_total());
        ev.split = power_split_for_kappa(kappa, n, config.total_energy, config.noise_power,
                                         config.comm_gain);
        WaveformSolution sol = optimize_comm(ctx.mu, ev.split.p_data, ev.split.cee_per_coeff,
                                             config.noise_power, config.comm_gain, config.l_data);
        ev.allocation = sol.allocation;
        ev.allocation.basis = ctx.sigma_h.decomposition.basis;
        ev.cee_eval = ev.split.cee_per_coeff;
        break;
    }
    }
    return ev;
}

MIReport evaluate_scheme(const Scheme& scheme, const TrialContext& ctx, const SystemConfig& config,
                         RngStream& rng)
{
    RngStream alloc_stream = rng.fork(kStreamAlloc);
    SchemeEvaluation ev = build_scheme_allocation(scheme, ctx, config, alloc_stream);

    MIReport r;
    double train_per_mode = ev.split.p_train / double(config.n_antennas);
    r.mi_sensing =
        sensing_mi(ctx.lambda, ev.allocation.energies, train_per_mode, ctx.noise_div, config.n_antennas);
    r.mi_comm = comm_mi_upper(ctx.mu, ev.allocation.energies, ev.cee_eval, ev.split.p_data, config.l_data,
                              config.noise_power, config.comm_gain);
    double l = double(config.l_total());
    r.rate_sensing = r.mi_sensing / l;
    r.rate_comm = r.mi_comm / l;
    r.rel_sensing = r.mi_sensing / ctx.f_r;
    r.rel_comm = r.mi_comm / ctx.f_c;
    r.weighted = weighted_objective(r.mi_sensing, r.mi_comm, ctx.f_r, ctx.f_c, ev.w_r_eval);
    return r;
}

MIReport run_trial(const SystemConfig& config, const Scheme& scheme, RngStream& rng)
{
    TrialContext ctx = make_trial_context(config, rng);
    return evaluate_scheme(scheme, ctx, config, rng);
}

std::string sweep_axis_label(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::snr_db:
        return "snr_db";
    case SweepAxis::train_ratio:
        return "train_ratio";
    case SweepAxis::total_length:
        return "total_length";
    case SweepAxis::weight_w_r:
        return "weight_w_r";
    case SweepAxis::eps_corr:
        return "eps_corr";
    }
    return "?";
}

SweepAxis sweep_axis_from_string(const std::string& name)
{
    if (name == "snr_db")
        return SweepAxis::snr_db;
    if (name == "train_ratio")
        return SweepAxis::train_ratio;
    if (name == "total_length")
        return SweepAxis::total_length;
    if (name == "weight_w_r")
        return SweepAxis::weight_w_r;
    if (name == "eps_corr")
        return SweepAxis::eps_corr;
    throw std::invalid_argument("sweep: unknown axis '" + name + "'");
}

void SweepSpec::validate() const
{
    if (values.size() < 1)
        throw std::invalid_argument("sweep: needs at least one axis value");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("sweep: axis values must be strictly increasing");
    if (trials < 1)
        throw std::invalid_argument("sweep: trials must be >= 1");
    if (schemes.empty())
        throw std::invalid_argument("sweep: needs at least one scheme");
}

SystemConfig config_for_value(const SweepSpec& spec, double value)
{
    SystemConfig c = spec.base;
    auto energy_for = [&](double snr_db, int l_total) {
        return double(l_total) * c.noise_power * std::pow(10.0, snr_db / 10.0);
    };
    switch (spec.axis) {
    case SweepAxis::snr_db:
        c.total_energy = energy_for(value, c.l_total());
        break;
    case SweepAxis::train_ratio: {
        int l = spec.base.l_total();
        c.l_train = int(std::lround(value * l));
        c.l_data = l - c.l_train;
        c.total_energy = energy_for(spec.base_snr_db, l);
        break;
    }
    case SweepAxis::total_length: {
        int l = int(std::lround(value));
        c.l_data = l - c.l_train;
        c.total_energy = energy_for(spec.base_snr_db, l);
        break;
    }
    case SweepAxis::weight_w_r:
        c.weight = value;
        break;
    case SweepAxis::eps_corr:
        c.eps_comm = value;
        break;
    }
    c.validate();
    return c;
}

SweepResult run_sweep(const SweepSpec& spec, int threads)
{
    spec.validate();
    const std::size_t nv = spec.values.size();
    const std::size_t ns = spec.schemes.size();
    const std::size_t nt = std::size_t(spec.trials);

    // resolve per-value configs up front; any invalid point aborts here
    std::vector<SystemConfig> configs(nv);
    for (std::size_t vi = 0; vi < nv; ++vi)
        configs[vi] = config_for_value(spec, spec.values[vi]);

    std::vector<MIReport> reports(nv * ns * nt);
    std::atomic<std::size_t> cursor{0};
    std::mutex fail_mutex;
    std::string failure;

    auto worker = [&]() {
        for (;;) {
            std::size_t k = cursor.fetch_add(1);
            if (k >= reports.size())
                return;
            std::size_t vi = k / (ns * nt);
            std::size_t si = (k / nt) % ns;
            std::size_t ti = k % nt;
            try {
                RngStream trial_rng(derive_seed(spec.base.seed, {vi, si, ti}));
                reports[k] = run_trial(configs[vi], spec.schemes[si], trial_rng);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(fail_mutex);
                if (failure.empty()) {
                    std::ostringstream msg;
                    msg << "trial failed at value=" << format_double(spec.values[vi])
                        << " scheme=" << scheme_label(spec.schemes[si]) << " trial=" << ti
                        << " seed=" << derive_seed(spec.base.seed, {vi, si, ti}) << ": " << e.what();
                    failure = msg.str();
                }
                cursor.store(reports.size());
                return;
            }
        }
    };

    int nthreads = threads > 0 ? threads : int(std::thread::hardware_concurrency());
    nthreads = std::max(1, std::min<int>(nthreads, 64));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (!failure.empty())
        throw std::runtime_error(failure);

    SweepResult result;
    result.axis = spec.axis;
    result.master_seed = spec.base.seed;
    result.trials = spec.trials;
    result.rows.reserve(nv * ns);

    auto fields = [](const MIReport& r) {
        return std::array<double, 7>{r.mi_sensing,   r.mi_comm,  r.rate_sensing, r.rate_comm,
                                     r.rel_sensing, r.rel_comm, r.weighted};
    };
    for (std::size_t vi = 0; vi < nv; ++vi) {
        for (std::size_t si = 0; si < ns; ++si) {
            std::array<double, 7> mean{}, m2{};
            for (std::size_t ti = 0; ti < nt; ++ti) {
                auto f = fields(reports[(vi * ns + si) * nt + ti]);
                for (int c = 0; c < 7; ++c) {
                    // Welford, fixed trial order for bit-reproducibility
                    double delta = f[c] - mean[c];
                    mean[c] += delta / double(ti + 1);
                    m2[c] += delta * (f[c] - mean[c]);
                }
            }
            SweepRow row;
            row.value = spec.values[vi];
            row.scheme = scheme_label(spec.schemes[si]);
            auto assign = [](MIReport& r, const std::array<double, 7>& f) {
                r.mi_sensing = f[0];
                r.mi_comm = f[1];
                r.rate_sensing = f[2];
                r.rate_comm = f[3];
                r.rel_sensing = f[4];
                r.rel_comm = f[5];
                r.weighted = f[6];
            };
            assign(row.mean, mean);
            std::array<double, 7> se{};
            if (nt > 1)
                for (int c = 0; c < 7; ++c)
                    se[c] = std::sqrt(m2[c] / double(nt - 1) / double(nt));
            assign(row.std_error, se);
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

std::string format_double(double v)
{
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string sweep_to_csv(const SweepResult& result, const std::string& config_hash)
{
    std::ostringstream out;
    out << "# seed=" << result.master_seed << " config_hash=" << config_hash << " trials=" << result.trials
        << "\n";
    out << "axis,value,scheme,mi_sensing,mi_comm,rate_sensing,rate_comm,rel_sensing,rel_comm,weighted,"
           "stderr_mi_sensing,stderr_mi_comm,stderr_rate_sensing,stderr_rate_comm,stderr_rel_sensing,"
           "stderr_rel_comm,stderr_weighted\n";
    std::string axis = sweep_axis_label(result.axis);
    for (const SweepRow& row : result.rows) {
        out << axis << ',' << format_double(row.value) << ',' << row.scheme;
        auto emit = [&](const MIReport& r) {
            out << ',' << format_double(r.mi_sensing) << ',' << format_double(r.mi_comm) << ','
                << format_double(r.rate_sensing) << ',' << format_double(r.rate_comm) << ','
                << format_double(r.rel_sensing) << ',' << format_double(r.rel_comm) << ','
                << format_double(r.weighted);
        };
        emit(row.mean);
        emit(row.std_error);
        out << "\n";
    }
    return out.str();
}

} // namespace jcas
