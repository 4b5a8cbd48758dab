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

#ifndef JCAS_WAVEFORM_OPT_HPP
#define JCAS_WAVEFORM_OPT_HPP

#include <optional>

#include "jcas/mutual_info.hpp"
#include "jcas/rng.hpp"

namespace jcas {

/**
 * Result of one constrained waveform optimization: the per-mode data-energy
 * allocation, the achieved objective, the Lagrange multiplier, and the set
 * of strictly positive modes. x_data stays empty until a waveform is
 * reconstructed from the allocation.
 */
struct WaveformSolution
{
    Allocation allocation;
    double objective = 0.0;  // F_r or F_c in bits; F_w is dimensionless
    double multiplier = 0.0; // alpha, beta', or zeta
    arma::uvec active_set;
    std::optional<arma::cx_mat> x_data;
};

// Sensing-only water-filling over the sensing eigenmodes:
//   q_i = (wl - p_train/N - noise_div/lambda_i)^+ with sum q_i = p_data.
// eigs_g descending, >= 0; throws std::domain_error when every eigenvalue
// is zero and std::invalid_argument for a nonpositive budget.
WaveformSolution optimize_sensing(const arma::vec& eigs_g, double p_train, double p_data, double noise_div,
                                  int n);

// Communication-only water-filling over the estimated-channel eigenmodes:
//   xi_i = (wl - (noise_power + (p_data/l_data) cee) / (mu_i (comm_gain - cee)))^+.
// Reduces to classical water-filling at cee = 0. Throws std::domain_error
// for cee >= comm_gain.
WaveformSolution optimize_comm(const arma::vec& eigs_h, double p_data, double cee, double noise_power,
                               double comm_gain, int l_data);

// Weighted joint design: maximizes w_r/F_r * MI_sens + (1-w_r)/F_c * MI_comm
// over a shared diagonal allocation, by bisection on the KKT multiplier.
// f_r and f_c are the two single-objective optima for this trial.
WaveformSolution optimize_weighted(double w_r, double f_r, double f_c, const arma::vec& eigs_g,
                                   const arma::vec& eigs_h, double p_train, double p_data, double noise_div,
                                   double noise_power, double comm_gain, double cee, int l_data, int n);

enum class BasisKind
{
    canonical, // first N standard-basis columns, deterministic
    haar       // orthonormalized complex Gaussian columns
};

// Rebuilds an N x L_d data waveform whose Gram equals
// basis * diag(energies) * basis^H. rng is only consulted for BasisKind::haar.
arma::cx_mat reconstruct_waveform(const Allocation& allocation, int l_data, BasisKind kind,
                                  RngStream* rng = nullptr);

// F_w = w_r * mi_sens / f_r + (1 - w_r) * mi_comm / f_c.
double weighted_objective(double mi_sens, double mi_comm, double f_r, double f_c, double w_r);

// Sum of the relative sensing and relative communication MI of one shared
// allocation (the quantity plotted against w_r and the correlation sweeps).
double total_relative_mi(const arma::vec& energies, const arma::vec& eigs_g, const arma::vec& eigs_h,
                         double f_r, double f_c, double p_train, double p_data, double cee, double noise_div,
                         double noise_power, double comm_gain, int l_data, int n);

/**
 * KKT certificate for a returned solution, checked directly from the
 * closed-form optimality conditions (independent of the solve path).
 */
struct KktCertificate
{
    double budget_error = 0.0; // |sum energies - p_data|
    double stationarity = 0.0; // max active-mode residual against the multiplier
    double slackness = 0.0;    // max positive part of inactive marginal minus multiplier
};

KktCertificate kkt_check_sensing(const WaveformSolution& sol, const arma::vec& eigs_g, double p_train,
                                 double p_data, double noise_div, int n);
KktCertificate kkt_check_comm(const WaveformSolution& sol, const arma::vec& eigs_h, double p_data, double cee,
                              double noise_power, double comm_gain, int l_data);
KktCertificate kkt_check_weighted(const WaveformSolution& sol, double w_r, double f_r, double f_c,
                                  const arma::vec& eigs_g, const arma::vec& eigs_h, double p_train,
                                  double p_data, double noise_div, double noise_power, double comm_gain,
                                  double cee, int l_data, int n);

} // namespace jcas

#endif
