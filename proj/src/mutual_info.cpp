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

#include "jcas/mutual_info.hpp"

#include <cmath>
#include <stdexcept>

namespace jcas {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;

void check_nonnegative(const arma::vec& v, const char* what)
{
    if (v.n_elem && v.min() < -1e-12 * std::max(1.0, arma::abs(v).max()))
        throw std::domain_error(std::string("mutual_info: negative ") + what);
}

} // namespace

void Allocation::validate() const
{
    check_nonnegative(energies, "allocation energy");
    if (arma::accu(energies) > budget + 1e-9 * std::max(1.0, budget))
        throw std::invalid_argument("allocation: energies exceed budget");
    if (basis.n_elem && (basis.n_rows != energies.n_elem || basis.n_cols != energies.n_elem))
        throw std::invalid_argument("allocation: basis dimensions do not match energies");
}

arma::cx_mat Allocation::gram() const
{
    arma::uword n = energies.n_elem;
    arma::cx_mat d = arma::diagmat(arma::cx_vec(energies, arma::vec(n, arma::fill::zeros)));
    if (!basis.n_elem)
        return d;
    return basis * d * basis.t();
}

double sensing_mi(const arma::vec& eigs_g, const arma::vec& energies, double train_per_mode, double noise_div,
                  int n)
{
    if (!(noise_div > 0.0))
        throw std::domain_error("sensing_mi: noise divisor must be positive");
    if (train_per_mode < 0.0)
        throw std::domain_error("sensing_mi: training energy must be nonnegative");
    if (eigs_g.n_elem != energies.n_elem)
        throw std::invalid_argument("sensing_mi: eigenvalue/energy length mismatch");
    check_nonnegative(eigs_g, "sensing eigenvalue");
    check_nonnegative(energies, "allocation energy");

    double acc = 0.0;
    for (arma::uword i = 0; i < eigs_g.n_elem; ++i) {
        double lam = std::max(eigs_g(i), 0.0);
        double q = std::max(energies(i), 0.0);
        acc += std::log1p(lam * (train_per_mode + q) / noise_div);
    }
    return double(n) * acc / kLn2;
}

double sensing_mi_matrix(const arma::cx_mat& gram_total, const CorrelationMatrix& sigma_g, double noise_div)
{
    if (!(noise_div > 0.0))
        throw std::domain_error("sensing_mi_matrix: noise divisor must be positive");
    if (gram_total.n_rows != sigma_g.matrix.n_rows)
        throw std::invalid_argument("sensing_mi_matrix: dimension mismatch");

    arma::cx_mat s = sqrt_psd(gram_total); // throws domain_error on non-PSD gram
    arma::cx_mat b = s.t() * sigma_g.matrix * s / noise_div;
    return double(gram_total.n_rows) * log2det_identity_plus(0.5 * (b + b.t()));
}

double comm_mi_upper(const arma::vec& eigs_h, const arma::vec& energies, double cee, double p_data, int l_data,
                     double noise_power, double comm_gain)
{
    if (!(noise_power > 0.0))
        throw std::domain_error("comm_mi_upper: noise power must be positive");
    if (cee < 0.0 || cee >= comm_gain)
        throw std::domain_error("comm_mi_upper: cee must lie in [0, comm_gain)");
    if (l_data < 1)
        throw std::invalid_argument("comm_mi_upper: l_data must be >= 1");
    if (p_data < 0.0)
        throw std::domain_error("comm_mi_upper: p_data must be nonnegative");
    if (eigs_h.n_elem != energies.n_elem)
        throw std::invalid_argument("comm_mi_upper: eigenvalue/energy length mismatch");
    check_nonnegative(eigs_h, "channel eigenvalue");
    check_nonnegative(energies, "allocation energy");

    double denom = (p_data / double(l_data)) * cee + noise_power;
    double gain = comm_gain - cee;
    double acc = 0.0;
    for (arma::uword i = 0; i < eigs_h.n_elem; ++i)
        acc += std::log1p(gain * std::max(eigs_h(i), 0.0) * std::max(energies(i), 0.0) / denom);
    return double(l_data) * acc / kLn2;
}

double comm_mi_realized(const arma::cx_mat& h_hat, const arma::cx_mat& sigma_xd_total, double equiv_noise_var,
                        int l_data)
{
    if (!(equiv_noise_var > 0.0))
        throw std::domain_error("comm_mi_realized: noise variance must be positive");
    if (l_data < 1)
        throw std::invalid_argument("comm_mi_realized: l_data must be >= 1");
    if (h_hat.n_cols != sigma_xd_total.n_rows)
        throw std::invalid_argument("comm_mi_realized: dimension mismatch");

    arma::cx_mat s = sqrt_psd(sigma_xd_total); // throws domain_error on non-PSD covariance
    arma::cx_mat b = s.t() * (h_hat.t() * h_hat) * s / equiv_noise_var;
    return double(l_data) * log2det_identity_plus(0.5 * (b + b.t()));
}

} // namespace jcas
