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

#ifndef JCAS_SIM_HARNESS_HPP
#define JCAS_SIM_HARNESS_HPP

#include <string>
#include <vector>

#include "jcas/power_alloc.hpp"
#include "jcas/waveform_opt.hpp"

namespace jcas {

enum class SchemeKind
{
    optc,          // communication-only optimum with CEE
    optc_no_cee,   // communication-only optimum pretending perfect CSI
    opts,          // sensing-only optimum
    jcas,          // weighted joint optimum, carries w_r
    equal,         // equal per-mode data energy
    random_alloc,  // uniform-simplex random data energy
    no_power_alloc // kappa = L_d / L (equal per-symbol energy), then comm optimum
};

struct Scheme
{
    SchemeKind kind = SchemeKind::optc;
    double w_r = -1.0; // jcas only; negative means "use the config weight"
};

std::string scheme_label(const Scheme& s);
Scheme scheme_from_string(const std::string& name); // throws std::invalid_argument

// Trial-level randomness and the derived per-trial quantities shared by all
// schemes: the two correlation draws, the optimal power split, and the two
// single-objective optima normalizing the weighted objective.
struct TrialContext
{
    CorrelationMatrix sigma_g; // sensing correlation, mean gain sens_gain
    CorrelationMatrix sigma_h; // normalized estimated-channel correlation, unit gain
    arma::vec lambda;          // descending eigenvalues of sigma_g
    arma::vec mu;              // descending eigenvalues of sigma_h
    PowerSplit split;          // Theorem-style optimal split
    double noise_div = 1.0;
    double f_r = 0.0;
    double f_c = 0.0;
    WaveformSolution opt_sensing;
    WaveformSolution opt_comm;
};

TrialContext make_trial_context(const SystemConfig& config, RngStream& rng);

// A scheme's allocation together with the power split and the estimation
// error variance under which that scheme is evaluated.
struct SchemeEvaluation
{
    Allocation allocation;
    PowerSplit split;
    double cee_eval = 0.0;
    double w_r_eval = 0.0;
};

SchemeEvaluation build_scheme_allocation(const Scheme& scheme, const TrialContext& ctx,
                                         const SystemConfig& config, RngStream& rng);

MIReport evaluate_scheme(const Scheme& scheme, const TrialContext& ctx, const SystemConfig& config,
                         RngStream& rng);

// One full trial: correlation draws, power split, scheme allocation, report.
MIReport run_trial(const SystemConfig& config, const Scheme& scheme, RngStream& rng);

enum class SweepAxis
{
    snr_db,
    train_ratio,
    total_length,
    weight_w_r,
    eps_corr
};

std::string sweep_axis_label(SweepAxis axis);
SweepAxis sweep_axis_from_string(const std::string& name); // throws std::invalid_argument

struct SweepSpec
{
    SweepAxis axis = SweepAxis::snr_db;
    std::vector<double> values;
    int trials = 500;
    std::vector<Scheme> schemes;
    SystemConfig base;
    double base_snr_db = 1.0; // SNR kept fixed while L varies

    void validate() const; // throws std::invalid_argument
};

// Concrete scenario for one axis value (derives P from SNR and L).
SystemConfig config_for_value(const SweepSpec& spec, double value);

struct SweepRow
{
    double value = 0.0;
    std::string scheme;
    MIReport mean;
    MIReport std_error;
};

struct SweepResult
{
    SweepAxis axis;
    std::vector<SweepRow> rows; // |values| x |schemes|, values outer
    std::uint64_t master_seed = 0;
    int trials = 0;
};

// Runs trials for every (value, scheme) pair. Per-trial streams derive from
// (master seed, axis index, scheme index, trial index), and aggregation
// follows a fixed order, so the result is identical at any thread count.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

// shortest round-trip decimal representation
std::string format_double(double v);

// CSV per the external contract: one comment header line carrying the seed
// and config hash, then axis,value,scheme,<MIReport columns>,<stderr columns>.
std::string sweep_to_csv(const SweepResult& result, const std::string& config_hash);

} // namespace jcas

#endif
