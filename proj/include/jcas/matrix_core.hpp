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

#ifndef JCAS_MATRIX_CORE_HPP
#define JCAS_MATRIX_CORE_HPP

#include <armadillo>

namespace jcas {

// Relative tolerance below which an eigenvalue counts as zero (and must not
// be inverted by any water-filling floor).
constexpr double kEigZeroTol = 1e-10;

/**
 * Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
 * For PSD inputs this coincides with the SVD.
 */
struct SpectralDecomposition
{
    arma::cx_mat basis;    // unitary, column i pairs with eigenvalues(i)
    arma::vec eigenvalues; // real, descending; ties keep solver order

    arma::cx_mat reconstruct() const
    {
        return basis * arma::diagmat(arma::cx_vec(eigenvalues, arma::vec(eigenvalues.n_elem, arma::fill::zeros))) *
               basis.t();
    }
};

// true iff max_ij |M(i,j) - conj(M(j,i))| <= tol * max|M|
bool is_hermitian(const arma::cx_mat& m, double rel_tol = 1e-10);

// Hermitian-specialized eigendecomposition (LAPACK zheev path via Armadillo).
// Throws std::invalid_argument for non-square or non-Hermitian input.
SpectralDecomposition hermitian_eig(const arma::cx_mat& m);

// Clamps negative eigenvalues to zero and rescales the spectrum so the trace
// equals target_trace. A matrix that is already PSD with the correct trace is
// returned unchanged. Throws std::domain_error for target_trace <= 0.
arma::cx_mat psd_repair(const arma::cx_mat& m, double target_trace);

// Hermitian square root S of a PSD matrix, S * S^H = M.
// Throws std::domain_error if M has an eigenvalue below -kEigZeroTol * scale.
arma::cx_mat sqrt_psd(const arma::cx_mat& m);

// log2 det(I + A) for Hermitian PSD A, evaluated from eigenvalues with log1p.
double log2det_identity_plus(const arma::cx_mat& psd);

} // namespace jcas

#endif
