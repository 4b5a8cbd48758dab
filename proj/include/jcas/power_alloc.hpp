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

#ifndef JCAS_POWER_ALLOC_HPP
#define JCAS_POWER_ALLOC_HPP

namespace jcas {

/**
 * Training/data energy split and the channel-estimation-error bounds that
 * follow from it. kappa is the data fraction: p_data = kappa * P,
 * p_train = (1 - kappa) * P.
 */
struct PowerSplit
{
    double kappa = 0.0;
    double p_train = 0.0;
    double p_data = 0.0;
    double cee_total = 0.0;     // C_t^l, lower bound on the total estimation MSE
    double cee_per_coeff = 0.0; // C_e^l = C_t^l / N
    double gamma = 0.0;         // capacity-split auxiliary; +inf when l_data == N
};

// CRLB-based lower bound on the channel-estimation MSE for a given total
// training energy. Returns (C_t, C_e) with C_t = N sn2 sh2 / (sn2 + E sh2)
// and C_e = C_t / N. C_e < sh2 always holds for E >= 0.
struct CeeBound
{
    double total;     // C_t
    double per_coeff; // C_e
};
CeeBound cee_lower_bound(int n, double train_energy, double noise_power, double comm_gain);

// Capacity-maximizing training/data split (three cases on l_data vs n) and
// the estimation-error bounds evaluated at that split.
PowerSplit optimal_kappa(int n, int l_data, double p, double noise_power, double comm_gain);

// Builds a PowerSplit for an externally chosen kappa (same CEE bookkeeping).
PowerSplit power_split_for_kappa(double kappa, int n, double p, double noise_power, double comm_gain);

enum class SnrRegime
{
    high,
    low
};

// Closed-form split limits: high-SNR sqrt(L_d)/(sqrt(L_d)+sqrt(N)), low-SNR 1/2.
// The high branch is undefined for l_data == n and throws std::domain_error.
double kappa_asymptotic(int n, int l_data, double p, double noise_power, double comm_gain, SnrRegime regime);

// Effective post-training SNR as a function of kappa; the quantity whose
// argmax over (0,1) defines the optimal split. Requires l_data != n.
double snr_rho(double kappa, int n, int l_data, double p, double noise_power, double comm_gain);

// Equivalent noise variance combining estimation error and thermal noise:
// (p_data / l_data) * cee_var + noise_power.
double equivalent_noise_var(double p_data, int l_data, double cee_var, double noise_power);

} // namespace jcas

#endif
