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

#include "jcas/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace jcas {

bool is_hermitian(const arma::cx_mat& m, double rel_tol)
{
    if (!m.is_square())
        return false;
    double scale = m.n_elem ? arma::abs(m).max() : 0.0;
    if (scale == 0.0)
        return true;
    double dev = 0.0;
    for (arma::uword j = 0; j < m.n_cols; ++j)
        for (arma::uword i = 0; i <= j; ++i)
            dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
    return dev <= rel_tol * scale;
}

SpectralDecomposition hermitian_eig(const arma::cx_mat& m)
{
    if (!m.is_square())
        throw std::invalid_argument("hermitian_eig: matrix is not square");
    if (!is_hermitian(m))
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian within tolerance");

    // exact symmetrization so LAPACK sees a bit-Hermitian input
    arma::cx_mat h = 0.5 * (m + m.t());

    arma::vec ev;
    arma::cx_mat vec;
    if (!arma::eig_sym(ev, vec, h, "std"))
        throw std::runtime_error("hermitian_eig: eigendecomposition failed to converge");

    // reorder descending; stable so equal eigenvalues keep solver order
    std::vector<arma::uword> idx(ev.n_elem);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](arma::uword a, arma::uword b) { return ev(a) > ev(b); });

    SpectralDecomposition d;
    d.eigenvalues.set_size(ev.n_elem);
    d.basis.set_size(vec.n_rows, vec.n_cols);
    for (arma::uword k = 0; k < ev.n_elem; ++k) {
        d.eigenvalues(k) = ev(idx[k]);
        d.basis.col(k) = vec.col(idx[k]);
    }
    return d;
}

arma::cx_mat psd_repair(const arma::cx_mat& m, double target_trace)
{
    if (target_trace <= 0.0)
        throw std::domain_error("psd_repair: target_trace must be positive");

    SpectralDecomposition d = hermitian_eig(m);
    double tr = arma::accu(d.eigenvalues);
    double scale = d.eigenvalues.n_elem ? arma::abs(d.eigenvalues).max() : 0.0;

    bool psd = d.eigenvalues.min() >= -kEigZeroTol * std::max(1.0, scale) && d.eigenvalues.min() >= 0.0;
    if (psd && std::abs(tr - target_trace) <= 1e-13 * std::max(1.0, target_trace))
        return m;

    arma::vec lam = arma::clamp(d.eigenvalues, 0.0, arma::datum::inf);
    double mass = arma::accu(lam);
    if (mass <= 0.0) {
        // nothing salvageable; the unique rotation-free PSD repair
        arma::uword n = m.n_rows;
        return arma::cx_mat(arma::eye(n, n) * (target_trace / double(n)),
                            arma::mat(n, n, arma::fill::zeros));
    }
    lam *= target_trace / mass;

    arma::cx_mat out = d.basis * arma::diagmat(arma::cx_vec(lam, arma::vec(lam.n_elem, arma::fill::zeros))) * d.basis.t();
    return 0.5 * (out + out.t());
}

arma::cx_mat sqrt_psd(const arma::cx_mat& m)
{
    SpectralDecomposition d = hermitian_eig(m);
    double scale = d.eigenvalues.n_elem ? arma::abs(d.eigenvalues).max() : 0.0;
    if (d.eigenvalues.min() < -kEigZeroTol * std::max(1.0, scale))
        throw std::domain_error("sqrt_psd: matrix has a negative eigenvalue beyond tolerance");

    arma::vec lam = arma::sqrt(arma::clamp(d.eigenvalues, 0.0, arma::datum::inf));
    arma::cx_mat s = d.basis * arma::diagmat(arma::cx_vec(lam, arma::vec(lam.n_elem, arma::fill::zeros))) * d.basis.t();
    return 0.5 * (s + s.t());
}

double log2det_identity_plus(const arma::cx_mat& psd)
{
    SpectralDecomposition d = hermitian_eig(psd);
    double scale = d.eigenvalues.n_elem ? arma::abs(d.eigenvalues).max() : 0.0;
    if (d.eigenvalues.min() < -kEigZeroTol * std::max(1.0, scale))
        throw std::domain_error("log2det_identity_plus: matrix is not PSD");

    double acc = 0.0;
    for (double lam : d.eigenvalues)
        acc += std::log1p(std::max(lam, 0.0));
    return acc / std::log(2.0);
}

} // namespace jcas
