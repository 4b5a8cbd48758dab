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

#include "jcas/power_alloc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jcas {

namespace {

void check_scalar_inputs(int n, double p, double noise_power, double comm_gain)
{
    if (n < 1)
        throw std::invalid_argument("power_alloc: n must be >= 1");
    if (!(p > 0.0) || !(noise_power > 0.0) || !(comm_gain > 0.0))
        throw std::invalid_argument("power_alloc: p, noise_power and comm_gain must be positive");
}

double gamma_value(int n, int l_data, double p, double noise_power, double comm_gain)
{
    return (double(l_data) / double(l_data - n)) * (1.0 + double(n) * noise_power / (p * comm_gain));
}

} // namespace

CeeBound cee_lower_bound(int n, double train_energy, double noise_power, double comm_gain)
{
    if (n < 1)
        throw std::invalid_argument("cee_lower_bound: n must be >= 1");
    if (train_energy < 0.0 || !(noise_power > 0.0) || !(comm_gain > 0.0))
        throw std::invalid_argument("cee_lower_bound: invalid inputs");

    double c_t = double(n) * noise_power * comm_gain / (noise_power + train_energy * comm_gain);
    return {c_t, c_t / double(n)};
}

PowerSplit power_split_for_kappa(double kappa, int n, double p, double noise_power, double comm_gain)
{
    check_scalar_inputs(n, p, noise_power, comm_gain);
    if (!(kappa > 0.0) || !(kappa < 1.0))
        throw std::domain_error("power_split_for_kappa: kappa must lie in (0, 1)");

    PowerSplit s;
    s.kappa = kappa;
    s.p_train = (1.0 - kappa) * p;
    s.p_data = kappa * p;
    CeeBound b = cee_lower_bound(n, s.p_train, noise_power, comm_gain);
    s.cee_total = b.total;
    s.cee_per_coeff = b.per_coeff;
    s.gamma = std::numeric_limits<double>::infinity();
    return s;
}

PowerSplit optimal_kappa(int n, int l_data, double p, double noise_power, double comm_gain)
{
    check_scalar_inputs(n, p, noise_power, comm_gain);
    if (l_data < 1)
        throw std::invalid_argument("optimal_kappa: l_data must be >= 1");

    double kappa;
    double gamma = std::numeric_limits<double>::infinity();
    if (l_data == n) {
        kappa = 0.5;
    } else {
        gamma = gamma_value(n, l_data, p, noise_power, comm_gain);
        double root = std::sqrt(gamma * (gamma - 1.0));
        kappa = (l_data > n) ? gamma - root : gamma + root;
    }
    if (!(kappa > 0.0) || !(kappa < 1.0))
        throw std::runtime_error("optimal_kappa: computed split left (0, 1)");

    PowerSplit s = power_split_for_kappa(kappa, n, p, noise_power, comm_gain);
    s.gamma = gamma;
    return s;
}

double kappa_asymptotic(int n, int l_data, double p, double noise_power, double comm_gain, SnrRegime regime)
{
    check_scalar_inputs(n, p, noise_power, comm_gain);
    if (l_data < 1)
        throw std::invalid_argument("kappa_asymptotic: l_data must be >= 1");

    if (regime == SnrRegime::low)
        return 0.5;
    if (l_data == n)
        throw std::domain_error("kappa_asymptotic: high-SNR limit is undefined for l_data == n");
    double sl = std::sqrt(double(l_data));
    return sl / (sl + std::sqrt(double(n)));
}

double snr_rho(double kappa, int n, int l_data, double p, double noise_power, double comm_gain)
{
    check_scalar_inputs(n, p, noise_power, comm_gain);
    if (l_data == n)
        throw std::invalid_argument("snr_rho: undefined for l_data == n");
    if (!(kappa > 0.0) || !(kappa < 1.0))
        throw std::domain_error("snr_rho: kappa must lie in (0, 1)");

    double gamma = gamma_value(n, l_data, p, noise_power, comm_gain);
    double lead = double(l_data) * p / (double(l_data - n) * double(n) * noise_power);
    return lead * kappa * (1.0 - kappa) / (gamma - kappa);
}

double equivalent_noise_var(double p_data, int l_data, double cee_var, double noise_power)
{
    if (p_data < 0.0 || cee_var < 0.0 || noise_power < 0.0)
        throw std::invalid_argument("equivalent_noise_var: inputs must be nonnegative");
    if (l_data < 1)
        throw std::invalid_argument("equivalent_noise_var: l_data must be >= 1");
    return (p_data / double(l_data)) * cee_var + noise_power;
}

} // namespace jcas
