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

#include "jcas/channel_model.hpp"

#include <cmath>
#include <stdexcept>

namespace jcas {

double SystemConfig::sensing_noise_div() const
{
    if (noise_exponent == NoiseExponent::one)
        return noise_power;
    return std::pow(noise_power, double(l_total()) / double(n_antennas));
}

void SystemConfig::validate() const
{
    if (n_antennas < 1)
        throw std::invalid_argument("config: n_antennas must be >= 1");
    if (l_train < n_antennas)
        throw std::invalid_argument("config: l_train must be >= n_antennas (orthogonal training)");
    if (l_data < 1)
        throw std::invalid_argument("config: l_data must be >= 1");
    if (!(total_energy > 0.0))
        throw std::invalid_argument("config: total_energy must be positive");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("config: noise_power must be positive");
    if (!(comm_gain > 0.0) || !(sens_gain > 0.0))
        throw std::invalid_argument("config: channel gains must be positive");
    if (eps_comm < 0.0 || eps_comm > 1.0 || eps_sens < 0.0 || eps_sens > 1.0)
        throw std::invalid_argument("config: correlation coefficients must lie in [0, 1]");
    if (weight < 0.0 || weight > 1.0)
        throw std::invalid_argument("config: weight must lie in [0, 1]");
}

arma::cx_mat CorrelationMatrix::sqrt() const
{
    arma::vec lam = arma::sqrt(arma::clamp(decomposition.eigenvalues, 0.0, arma::datum::inf));
    arma::cx_mat s = decomposition.basis *
                     arma::diagmat(arma::cx_vec(lam, arma::vec(lam.n_elem, arma::fill::zeros))) *
                     decomposition.basis.t();
    return 0.5 * (s + s.t());
}

CorrelationMatrix make_correlation(const arma::cx_mat& m)
{
    if (!m.is_square() || m.n_rows == 0)
        throw std::invalid_argument("make_correlation: matrix must be square and non-empty");
    if (!is_hermitian(m))
        throw std::invalid_argument("make_correlation: matrix is not Hermitian");

    const arma::uword n = m.n_rows;
    double gain = arma::trace(m).real() / double(n);
    if (!(gain > 0.0))
        throw std::invalid_argument("make_correlation: mean gain must be positive");
    for (arma::uword i = 0; i < n; ++i) {
        if (std::abs(m(i, i).real() - gain) > 1e-9 * std::max(1.0, gain) || std::abs(m(i, i).imag()) > 1e-9)
            throw std::invalid_argument("make_correlation: diagonal entries must all equal the mean gain");
    }

    CorrelationMatrix c;
    c.matrix = m;
    c.mean_gain = gain;
    c.decomposition = hermitian_eig(m);
    double scale = std::max(1.0, arma::abs(c.decomposition.eigenvalues).max());
    if (c.decomposition.eigenvalues.min() < -kEigZeroTol * scale)
        throw std::invalid_argument("make_correlation: matrix is not PSD");
    c.decomposition.eigenvalues = arma::clamp(c.decomposition.eigenvalues, 0.0, arma::datum::inf);
    return c;
}

CorrelationMatrix gen_correlation(int n, double eps_c, double mean_gain, RngStream& rng)
{
    if (n < 1)
        throw std::invalid_argument("gen_correlation: n must be >= 1");
    if (eps_c < 0.0 || eps_c > 1.0)
        throw std::domain_error("gen_correlation: eps_c must lie in [0, 1]");
    if (!(mean_gain > 0.0))
        throw std::invalid_argument("gen_correlation: mean_gain must be positive");

    const double two_pi = 6.283185307179586476925286766559;
    arma::cx_mat c(n, n, arma::fill::zeros);
    for (int i = 0; i < n; ++i) {
        c(i, i) = 1.0;
        for (int j = i + 1; j < n; ++j) {
            double mag = rng.uniform(0.0, eps_c);
            double phase = rng.uniform(0.0, two_pi);
            std::complex<double> z = std::polar(mag, phase);
            c(i, j) = z;
            c(j, i) = std::conj(z);
        }
    }

    // Clamp-and-rescale alone perturbs the diagonal whenever it triggers, so
    // alternate psd_repair with a diagonal reset until both the PSD and the
    // identical-diagonal invariants hold. Converges to a point in the
    // intersection (both sets are convex and contain the identity).
    for (int iter = 0; iter < 500; ++iter) {
        // Gershgorin certificate: strictly diagonally dominant => PSD
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            double off = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i)
                    off += std::abs(c(i, j));
            worst = std::max(worst, off - c(i, i).real());
        }
        if (worst <= 0.0)
            break;

        SpectralDecomposition d = hermitian_eig(c);
        double diag_dev = 0.0;
        for (int i = 0; i < n; ++i)
            diag_dev = std::max(diag_dev, std::abs(c(i, i) - std::complex<double>(1.0, 0.0)));
        if (d.eigenvalues.min() >= -1e-12 && diag_dev <= 1e-12)
            break;

        arma::vec lam = arma::clamp(d.eigenvalues, 0.0, arma::datum::inf);
        c = d.basis * arma::diagmat(arma::cx_vec(lam, arma::vec(lam.n_elem, arma::fill::zeros))) * d.basis.t();
        c = 0.5 * (c + c.t());
        for (int i = 0; i < n; ++i)
            c(i, i) = 1.0;
    }

    return make_correlation(mean_gain * c);
}

arma::cx_mat draw_channel(const CorrelationMatrix& corr, RngStream& rng)
{
    const int n = corr.n();
    arma::cx_mat h0(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h0(i, j) = rng.cgauss();
    return h0 * corr.sqrt();
}

double training_gram(const SystemConfig& config, double p_train)
{
    if (p_train < 0.0)
        throw std::invalid_argument("training_gram: p_train must be nonnegative");
    return p_train / double(config.n_antennas);
}

} // namespace jcas
