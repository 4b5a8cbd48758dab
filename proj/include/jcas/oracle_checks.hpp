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

#ifndef JCAS_ORACLE_CHECKS_HPP
#define JCAS_ORACLE_CHECKS_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "jcas/config.hpp"

namespace jcas {

// Grid argmax of snr_rho over kappa in (0, 1); the brute-force reference
// for the closed-form split.
double kappa_argmax_grid(int n, int l_data, double p, double noise_power, double comm_gain,
                         double step = 1e-5);

// Maximum of a concave objective over the simplex face {x >= 0, sum x = budget}
// for n <= 3 modes, by grid search refined down to final_step.
double simplex_grid_max(const std::function<double(const arma::vec&)>& objective, int n, double budget,
                        double final_step);

struct OracleOutcome
{
    std::string name;
    bool passed = false;
    double residual = 0.0; // worst observed residual for the check
    std::string detail;
};

// Runs the oracle suite (closed-form vs grid, KKT certificates, weighted
// grid equivalence, waveform reconstruction, Jensen bound). A non-"none"
// settings.inject_fault deliberately mismatches the sensing noise exponent
// between optimizer and evaluator; the suite must then fail.
std::vector<OracleOutcome> run_oracle_checks(const RunSettings& settings, std::ostream& log);

} // namespace jcas

#endif
