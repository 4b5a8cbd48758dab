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

#ifndef JCAS_CHANNEL_MODEL_HPP
#define JCAS_CHANNEL_MODEL_HPP

#include <cstdint>

#include "jcas/matrix_core.hpp"
#include "jcas/rng.hpp"

namespace jcas {

// Exponent applied to the noise power in the sensing MI denominator.
// The standard per-element form uses 1; l_over_n reproduces the
// (sigma_n^2)^(L/N) variant. Both coincide when noise_power == 1.
enum class NoiseExponent
{
    one,
    l_over_n
};

/**
 * Scalar scenario parameters for one packetized MIMO link.
 *
 * A packet carries l_train orthogonal training symbols and l_data data
 * symbols per spatial stream; total_energy is split between them by a
 * PowerSplit. Correlation coefficients eps_* bound the off-diagonal
 * magnitudes of the randomly generated spatial correlation matrices.
 */
struct SystemConfig
{
    int n_antennas = 8;           // N
    int l_train = 8;              // L_t, >= N for orthogonal training
    int l_data = 120;             // L_d
    double total_energy = 128.0;  // P
    double noise_power = 1.0;     // sigma_n^2
    double comm_gain = 1.0;       // sigma_h^2, mean gain of H
    double sens_gain = 1.0;       // sigma_g^2, mean gain of G
    double eps_comm = 0.1;        // max correlation coefficient for H
    double eps_sens = 0.8;        // max correlation coefficient for G
    double weight = 0.5;          // w_r, sensing weight in the joint objective
    std::uint64_t seed = 1;

    NoiseExponent noise_exponent = NoiseExponent::one;
    bool no_cee_all_power_to_data = false; // alternative OPTC-without-CEE convention

    int l_total() const { return l_train + l_data; }

    // noise divisor entering all sensing-MI formulas
    double sensing_noise_div() const;

    // throws std::invalid_argument on any violated invariant
    void validate() const;
};

/**
 * Hermitian PSD spatial correlation matrix with its spectral decomposition.
 * Diagonal entries all equal mean_gain; trace = N * mean_gain.
 */
struct CorrelationMatrix
{
    arma::cx_mat matrix;
    SpectralDecomposition decomposition; // eigenvalues clamped to >= 0
    double mean_gain = 0.0;

    int n() const { return static_cast<int>(matrix.n_rows); }
    arma::cx_mat sqrt() const; // Hermitian square root from the decomposition
};

// Validates the correlation invariants and attaches the decomposition.
CorrelationMatrix make_correlation(const arma::cx_mat& m);

// Random spatial correlation: identical diagonal elements, off-diagonal
// magnitudes uniform on [0, eps_c] (relative to the diagonal) with uniform
// phases, Hermitized and repaired to a PSD matrix with exact trace
// n * mean_gain and equal diagonal. Deterministic given the stream.
CorrelationMatrix gen_correlation(int n, double eps_c, double mean_gain, RngStream& rng);

// Kronecker channel draw H = H0 * corr^(1/2), H0 iid CN(0,1).
arma::cx_mat draw_channel(const CorrelationMatrix& corr, RngStream& rng);

// Per-eigenmode training energy P_t / N; orthogonal training enters every
// formula only through its Gram (P_t/N) * I_N.
double training_gram(const SystemConfig& config, double p_train);

} // namespace jcas

#endif
