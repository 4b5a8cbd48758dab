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

#ifndef JCAS_MUTUAL_INFO_HPP
#define JCAS_MUTUAL_INFO_HPP

#include "jcas/channel_model.hpp"
#include "jcas/matrix_core.hpp"

namespace jcas {

/**
 * Per-eigenmode data-energy allocation. energies(i) is the data energy on
 * the i-th column of basis; the waveform Gram is basis * diag(energies) *
 * basis^H. An empty basis means the canonical (identity) basis.
 */
struct Allocation
{
    arma::vec energies;
    arma::cx_mat basis;
    double budget = 0.0;

    // throws std::invalid_argument if energies are negative or exceed budget
    void validate() const;

    // total-energy Gram matrix U diag(energies) U^H
    arma::cx_mat gram() const;
};

/**
 * MI and rate figures for one trial of one scheme. Rates divide by the
 * total packet length; relative values divide by the per-trial optima.
 */
struct MIReport
{
    double mi_sensing = 0.0;   // bits
    double mi_comm = 0.0;      // bits
    double rate_sensing = 0.0; // bits per symbol
    double rate_comm = 0.0;    // bits per symbol
    double rel_sensing = 0.0;  // mi_sensing / F_r
    double rel_comm = 0.0;     // mi_comm / F_c
    double weighted = 0.0;     // w_r rel_sensing + (1 - w_r) rel_comm
};

// Sensing MI for an allocation diagonal in the sensing eigenbasis:
//   N * sum_i log2(eigs_g(i) * (train_per_mode + energies(i)) / noise_div + 1).
// noise_div is the (possibly exponentiated) noise power.
double sensing_mi(const arma::vec& eigs_g, const arma::vec& energies, double train_per_mode, double noise_div,
                  int n);

// Full-matrix sensing MI, N * log2 det(gram_total * Sigma_G / noise_div + I),
// for an arbitrary PSD total-energy Gram (training + data).
double sensing_mi_matrix(const arma::cx_mat& gram_total, const CorrelationMatrix& sigma_g, double noise_div);

// Hadamard/Jensen upper bound on the communication MI for an allocation
// diagonal in the estimated-channel eigenbasis:
//   L_d * sum_i log2((sh2 - cee) * eigs_h(i) * energies(i) / ((p_data/L_d) cee + sn2) + 1).
double comm_mi_upper(const arma::vec& eigs_h, const arma::vec& energies, double cee, double p_data, int l_data,
                     double noise_power, double comm_gain);

// Realized communication MI for a concrete channel estimate:
//   L_d * log2 det(H_hat * sigma_xd_total * H_hat^H / equiv_noise_var + I).
// sigma_xd_total is the total-energy Gram (per-symbol covariance times L_d).
double comm_mi_realized(const arma::cx_mat& h_hat, const arma::cx_mat& sigma_xd_total, double equiv_noise_var,
                        int l_data);

} // namespace jcas

#endif
