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

#include <catch2/catch_amalgamated.hpp>

#include "jcas/mutual_info.hpp"
#include "jcas/power_alloc.hpp"
#include "jcas/waveform_opt.hpp"

using namespace jcas;

TEST_CASE("sensing_mi scalar cases")
{
    REQUIRE(sensing_mi(arma::vec{1.0}, arma::vec{0.0}, 0.0, 1.0, 1) == 0.0);
    REQUIRE(sensing_mi(arma::vec{1.0}, arma::vec{3.0}, 0.0, 1.0, 1) == Catch::Approx(2.0).margin(1e-12));

    // N=2, lambda=(1,0.5), q=(1.5,0.5), no training
    double mi = sensing_mi(arma::vec{1.0, 0.5}, arma::vec{1.5, 0.5}, 0.0, 1.0, 2);
    REQUIRE(mi == Catch::Approx(3.2877).margin(5e-4));
    REQUIRE(mi == Catch::Approx(2.0 * (std::log2(2.5) + std::log2(1.25))).margin(1e-12));
}

TEST_CASE("sensing_mi rejects invalid inputs")
{
    REQUIRE_THROWS_AS(sensing_mi(arma::vec{-0.5}, arma::vec{1.0}, 0.0, 1.0, 1), std::domain_error);
    REQUIRE_THROWS_AS(sensing_mi(arma::vec{1.0}, arma::vec{-0.5}, 0.0, 1.0, 1), std::domain_error);
    REQUIRE_THROWS_AS(sensing_mi(arma::vec{1.0}, arma::vec{1.0}, 0.0, 0.0, 1), std::domain_error);
}

TEST_CASE("sensing_mi is monotone in energy and training")
{
    arma::vec lam{1.2, 0.7, 0.3};
    arma::vec q{1.0, 0.5, 0.25};
    double base = sensing_mi(lam, q, 0.5, 1.0, 3);
    for (int i = 0; i < 3; ++i) {
        arma::vec q2 = q;
        q2(i) += 0.1;
        REQUIRE(sensing_mi(lam, q2, 0.5, 1.0, 3) > base);
    }
    REQUIRE(sensing_mi(lam, q, 0.6, 1.0, 3) > base);
}

TEST_CASE("matrix form agrees with the diagonal form in the sensing basis")
{
    RngStream rng(3);
    CorrelationMatrix corr = gen_correlation(5, 0.7, 1.2, rng);
    arma::vec q{2.0, 1.0, 0.5, 0.25, 0.0};
    double train_per_mode = 0.3;

    Allocation alloc;
    alloc.energies = q;
    alloc.basis = corr.decomposition.basis;
    alloc.budget = arma::accu(q);

    arma::cx_mat eye(arma::eye(5, 5), arma::mat(5, 5, arma::fill::zeros));
    arma::cx_mat gram_total = alloc.gram() + train_per_mode * eye;

    double diag_form = sensing_mi(corr.decomposition.eigenvalues, q, train_per_mode, 1.0, 5);
    double mat_form = sensing_mi_matrix(gram_total, corr, 1.0);
    REQUIRE(mat_form == Catch::Approx(diag_form).margin(1e-9));

    REQUIRE(sensing_mi_matrix(arma::cx_mat(5, 5, arma::fill::zeros), corr, 1.0) == 0.0);
}

TEST_CASE("sensing_mi_matrix rejects a non-PSD gram")
{
    RngStream rng(5);
    CorrelationMatrix corr = gen_correlation(3, 0.2, 1.0, rng);
    arma::cx_mat bad(arma::diagmat(arma::vec{1.0, -0.2, 0.1}), arma::mat(3, 3, arma::fill::zeros));
    REQUIRE_THROWS_AS(sensing_mi_matrix(bad, corr, 1.0), std::domain_error);
}

TEST_CASE("cross-basis allocation never beats the sensing optimum")
{
    RngStream rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        RngStream sub = rng.fork(trial);
        RngStream sub_h = sub.fork(0);
        RngStream sub_g = sub.fork(1);
        CorrelationMatrix sigma_h = gen_correlation(4, 0.3, 1.0, sub_h);
        CorrelationMatrix sigma_g = gen_correlation(4, 0.8, 1.0, sub_g);
        double p_data = 6.0, p_train = 2.0;

        WaveformSolution best =
            optimize_sensing(sigma_g.decomposition.eigenvalues, p_train, p_data, 1.0, 4);

        WaveformSolution comm = optimize_comm(sigma_h.decomposition.eigenvalues, p_data, 0.05, 1.0, 1.0, 20);
        comm.allocation.basis = sigma_h.decomposition.basis;
        arma::cx_mat eye(arma::eye(4, 4), arma::mat(4, 4, arma::fill::zeros));
        double cross = sensing_mi_matrix(comm.allocation.gram() + (p_train / 4.0) * eye, sigma_g, 1.0);
        REQUIRE(cross <= best.objective + 1e-9);
    }
}

TEST_CASE("comm_mi_upper closed-form cases")
{
    REQUIRE(comm_mi_upper(arma::vec{1.0}, arma::vec{0.0}, 0.1, 10.0, 10, 1.0, 1.0) == 0.0);
    REQUIRE(comm_mi_upper(arma::vec{1.0}, arma::vec{3.0}, 0.0, 30.0, 10, 1.0, 1.0) ==
            Catch::Approx(20.0).margin(1e-12));
    double mi = comm_mi_upper(arma::vec{1.0}, arma::vec{2.2}, 0.1, 1.0, 1, 1.0, 1.0);
    REQUIRE(mi == Catch::Approx(std::log2(2.8)).margin(1e-12));
    REQUIRE(mi == Catch::Approx(1.4854).margin(5e-4));
    REQUIRE_THROWS_AS(comm_mi_upper(arma::vec{1.0}, arma::vec{1.0}, 1.0, 1.0, 1, 1.0, 1.0),
                      std::domain_error);
    // zero or negative noise is never evaluated
    REQUIRE_THROWS_AS(comm_mi_upper(arma::vec{1.0}, arma::vec{1.0}, 0.0, 1.0, 1, 0.0, 1.0),
                      std::domain_error);
    REQUIRE_THROWS_AS(comm_mi_realized(arma::cx_mat(2, 2, arma::fill::zeros),
                                       arma::cx_mat(2, 2, arma::fill::zeros), -1.0, 5),
                      std::domain_error);
}

TEST_CASE("comm_mi_realized determinant form")
{
    arma::cx_mat eye(arma::eye(3, 3), arma::mat(3, 3, arma::fill::zeros));
    REQUIRE(comm_mi_realized(eye, arma::cx_mat(3, 3, arma::fill::zeros), 1.0, 5) == 0.0);
    REQUIRE(comm_mi_realized(eye, eye, 1.0, 5) == Catch::Approx(15.0).margin(1e-9));

    arma::cx_mat bad(arma::diagmat(arma::vec{1.0, -0.2, 0.1}), arma::mat(3, 3, arma::fill::zeros));
    REQUIRE_THROWS_AS(comm_mi_realized(eye, bad, 1.0, 5), std::domain_error);
}

TEST_CASE("mean realized MI sits below the Hadamard/Jensen upper bound")
{
    const int n = 8, l_data = 120;
    const double noise = 1.0, gain = 1.0;
    const double p = 128.0 * std::pow(10.0, 0.1);
    PowerSplit split = optimal_kappa(n, l_data, p, noise, gain);

    RngStream rng(23);
    const int trials = 1000;
    double sum = 0.0, sum2 = 0.0;
    for (int t = 0; t < trials; ++t) {
        RngStream trial = rng.fork(t);
        RngStream corr_rng = trial.fork(0);
        RngStream chan_rng = trial.fork(1);
        CorrelationMatrix sigma_h = gen_correlation(n, 0.1, 1.0, corr_rng);
        WaveformSolution sol = optimize_comm(sigma_h.decomposition.eigenvalues, split.p_data,
                                             split.cee_per_coeff, noise, gain, l_data);
        sol.allocation.basis = sigma_h.decomposition.basis;

        double est_gain = gain - split.cee_per_coeff;
        arma::cx_mat h_hat = std::sqrt(est_gain / double(n)) * draw_channel(sigma_h, chan_rng);
        double noise_eq = equivalent_noise_var(split.p_data, l_data, split.cee_per_coeff, noise);
        double realized = comm_mi_realized(h_hat, sol.allocation.gram(), noise_eq, l_data);
        double diff = realized - sol.objective;
        sum += diff;
        sum2 += diff * diff;
    }
    double mean = sum / trials;
    double se = std::sqrt((sum2 - sum * sum / trials) / double(trials - 1) / trials);
    REQUIRE(mean <= 3.0 * se);
}

TEST_CASE("allocation validation")
{
    Allocation a;
    a.energies = arma::vec{1.0, 2.0};
    a.budget = 3.0;
    REQUIRE_NOTHROW(a.validate());
    a.budget = 2.0;
    REQUIRE_THROWS_AS(a.validate(), std::invalid_argument);
    a.budget = 3.0;
    a.energies(0) = -0.1;
    REQUIRE_THROWS_AS(a.validate(), std::domain_error);
}
