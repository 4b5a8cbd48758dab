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

#include "jcas/oracle_checks.hpp"
#include "jcas/waveform_opt.hpp"

using namespace jcas;

TEST_CASE("sensing water-filling closed-form example")
{
    WaveformSolution sol = optimize_sensing(arma::vec{1.0, 0.5}, 0.0, 2.0, 1.0, 2);
    REQUIRE(sol.allocation.energies(0) == Catch::Approx(1.5).margin(1e-12));
    REQUIRE(sol.allocation.energies(1) == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(sol.active_set.n_elem == 2);

    // 2-D grid verification of the objective
    auto objective = [&](const arma::vec& q) { return sensing_mi(arma::vec{1.0, 0.5}, q, 0.0, 1.0, 2); };
    double grid = simplex_grid_max(objective, 2, 2.0, 1e-4 * 2.0);
    REQUIRE(sol.objective >= grid - 1e-6);
}

TEST_CASE("sensing water-filling symmetry and weak-mode shutoff")
{
    WaveformSolution even = optimize_sensing(arma::vec{1.0, 1.0}, 1.0, 2.0, 1.0, 2);
    REQUIRE(even.allocation.energies(0) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(even.allocation.energies(1) == Catch::Approx(1.0).margin(1e-12));

    WaveformSolution weak = optimize_sensing(arma::vec{1.0, 1e-9}, 0.0, 1.0, 1.0, 2);
    REQUIRE(weak.allocation.energies(0) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(weak.allocation.energies(1) == 0.0);
    REQUIRE(weak.active_set.n_elem == 1);

    REQUIRE_THROWS_AS(optimize_sensing(arma::vec{0.0, 0.0}, 0.0, 1.0, 1.0, 2), std::domain_error);
}

TEST_CASE("training offset cancels when all modes stay active")
{
    arma::vec lam{1.0, 0.8, 0.6};
    WaveformSolution without = optimize_sensing(lam, 0.0, 9.0, 1.0, 3);
    WaveformSolution with = optimize_sensing(lam, 6.0, 9.0, 1.0, 3);
    REQUIRE(without.active_set.n_elem == 3);
    REQUIRE(with.active_set.n_elem == 3);
    REQUIRE(arma::abs(without.allocation.energies - with.allocation.energies).max() < 1e-10);
}

TEST_CASE("comm water-filling reduces to the classical solution at zero CEE")
{
    WaveformSolution sol = optimize_comm(arma::vec{1.0, 0.5}, 2.0, 0.0, 1.0, 1.0, 50);
    REQUIRE(sol.allocation.energies(0) == Catch::Approx(1.5).margin(1e-12));
    REQUIRE(sol.allocation.energies(1) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("comm water-filling worked CEE example")
{
    WaveformSolution sol = optimize_comm(arma::vec{1.0, 0.5}, 2.0, 0.1, 1.0, 1.0, 100);
    REQUIRE(sol.allocation.energies(0) == Catch::Approx(1.55667).margin(1e-5));
    REQUIRE(sol.allocation.energies(1) == Catch::Approx(0.44333).margin(1e-5));

    auto objective = [&](const arma::vec& q) {
        return comm_mi_upper(arma::vec{1.0, 0.5}, q, 0.1, 2.0, 100, 1.0, 1.0);
    };
    double grid = simplex_grid_max(objective, 2, 2.0, 1e-4 * 2.0);
    REQUIRE(sol.objective >= grid - 1e-6);

    WaveformSolution flat = optimize_comm(arma::vec{0.7, 0.7, 0.7}, 3.0, 0.1, 1.0, 1.0, 10);
    for (int i = 0; i < 3; ++i)
        REQUIRE(flat.allocation.energies(i) == Catch::Approx(1.0).margin(1e-12));

    REQUIRE_THROWS_AS(optimize_comm(arma::vec{1.0}, 1.0, 1.0, 1.0, 1.0, 10), std::domain_error);
}

TEST_CASE("optimizers return tight KKT certificates on random instances")
{
    RngStream rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + int(rng.next_u64() % 8);
        arma::vec eigs(n);
        for (int i = 0; i < n; ++i)
            eigs(i) = rng.uniform(1e-3, 4.0);
        eigs = arma::sort(eigs, "descend");
        double p_train = rng.uniform(0.0, 20.0);
        double p_data = rng.uniform(0.1, 50.0);
        double noise = rng.uniform(0.5, 2.0);

        WaveformSolution s = optimize_sensing(eigs, p_train, p_data, noise, n);
        KktCertificate cs = kkt_check_sensing(s, eigs, p_train, p_data, noise, n);
        REQUIRE(cs.budget_error <= 1e-9 * p_data);
        REQUIRE(cs.stationarity <= 1e-9);
        REQUIRE(cs.slackness <= 1e-9);

        double gain = rng.uniform(0.5, 2.0);
        double cee = rng.uniform(0.0, 0.6) * gain;
        int l_data = n + int(rng.next_u64() % 100);
        WaveformSolution c = optimize_comm(eigs, p_data, cee, noise, gain, l_data);
        KktCertificate cc = kkt_check_comm(c, eigs, p_data, cee, noise, gain, l_data);
        REQUIRE(cc.budget_error <= 1e-9 * p_data);
        REQUIRE(cc.stationarity <= 1e-9);
        REQUIRE(cc.slackness <= 1e-9);
    }
}

TEST_CASE("weighted solver meets both single-objective endpoints")
{
    RngStream rng(37);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + int(rng.next_u64() % 8);
        arma::vec lam(n), mu(n);
        for (int i = 0; i < n; ++i) {
            lam(i) = rng.uniform(0.05, 2.0);
            mu(i) = rng.uniform(0.05, 2.0);
        }
        double p_train = rng.uniform(0.0, 10.0);
        double p_data = rng.uniform(0.5, 30.0);
        double noise = rng.uniform(0.5, 2.0);
        double gain = rng.uniform(0.5, 2.0);
        double cee = rng.uniform(0.0, 0.4) * gain;
        int l_data = n + 4 + int(rng.next_u64() % 60);

        WaveformSolution s0 = optimize_sensing(lam, p_train, p_data, noise, n);
        WaveformSolution c0 = optimize_comm(mu, p_data, cee, noise, gain, l_data);

        WaveformSolution w0 = optimize_weighted(0.0, s0.objective, c0.objective, lam, mu, p_train, p_data,
                                                noise, noise, gain, cee, l_data, n);
        REQUIRE(arma::abs(w0.allocation.energies - c0.allocation.energies).max() < 1e-6);

        WaveformSolution w1 = optimize_weighted(1.0, s0.objective, c0.objective, lam, mu, p_train, p_data,
                                                noise, noise, gain, cee, l_data, n);
        REQUIRE(arma::abs(w1.allocation.energies - s0.allocation.energies).max() < 1e-6);
    }
}

TEST_CASE("weighted solver matches the 2-D grid oracle on the worked example")
{
    arma::vec lam{1.0, 0.5};
    arma::vec mu{0.5, 1.0};
    double p_train = 1.0, p_data = 2.0, noise = 1.0, gain = 1.0, cee = 0.0;
    int l_data = 10, n = 2;

    WaveformSolution s0 = optimize_sensing(arma::sort(lam, "descend"), p_train, p_data, noise, n);
    WaveformSolution c0 = optimize_comm(arma::sort(mu, "descend"), p_data, cee, noise, gain, l_data);
    WaveformSolution sol = optimize_weighted(0.5, s0.objective, c0.objective, lam, mu, p_train, p_data,
                                             noise, noise, gain, cee, l_data, n);

    auto objective = [&](const arma::vec& q) {
        double mi_s = sensing_mi(lam, q, p_train / 2.0, noise, n);
        double mi_c = comm_mi_upper(mu, q, cee, p_data, l_data, noise, gain);
        return weighted_objective(mi_s, mi_c, s0.objective, c0.objective, 0.5);
    };
    double grid = simplex_grid_max(objective, 2, p_data, 1e-4 * p_data);
    REQUIRE(sol.objective >= grid - 1e-6);

    KktCertificate cert = kkt_check_weighted(sol, 0.5, s0.objective, c0.objective, lam, mu, p_train, p_data,
                                             noise, noise, gain, cee, l_data, n);
    REQUIRE(cert.budget_error <= 1e-9 * p_data);
    REQUIRE(cert.stationarity <= 1e-9);
    REQUIRE(cert.slackness <= 1e-9);
}

TEST_CASE("weighted allocations vary continuously in the weight")
{
    RngStream rng(41);
    int n = 4;
    arma::vec lam{1.5, 1.0, 0.6, 0.2};
    arma::vec mu{1.2, 0.9, 0.5, 0.3};
    double p_train = 3.0, p_data = 8.0, noise = 1.0, gain = 1.0, cee = 0.05;
    int l_data = 40;
    (void)rng;

    WaveformSolution s0 = optimize_sensing(lam, p_train, p_data, noise, n);
    WaveformSolution c0 = optimize_comm(mu, p_data, cee, noise, gain, l_data);

    arma::vec prev;
    for (double w = 0.0; w <= 1.0 + 1e-12; w += 0.01) {
        WaveformSolution sol = optimize_weighted(std::min(w, 1.0), s0.objective, c0.objective, lam, mu,
                                                 p_train, p_data, noise, noise, gain, cee, l_data, n);
        if (prev.n_elem)
            REQUIRE(arma::abs(sol.allocation.energies - prev).max() <= 10.0 * 0.01 * p_data);
        prev = sol.allocation.energies;
    }
}

TEST_CASE("waveform reconstruction reproduces the Gram in both bases")
{
    RngStream rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + int(rng.next_u64() % 8);
        int l_data = n + int(rng.next_u64() % 30);
        RngStream corr_rng = rng.fork(trial);
        CorrelationMatrix corr = gen_correlation(n, 0.5, 1.0, corr_rng);

        Allocation alloc;
        alloc.energies.set_size(n);
        for (int i = 0; i < n; ++i)
            alloc.energies(i) = rng.uniform(0.0, 4.0);
        alloc.budget = arma::accu(alloc.energies) + 1e-12;
        alloc.basis = corr.decomposition.basis;

        arma::cx_mat target = alloc.gram();
        double scale = std::max(1e-12, arma::norm(target, "fro"));

        arma::cx_mat xc = reconstruct_waveform(alloc, l_data, BasisKind::canonical);
        REQUIRE(arma::norm(xc * xc.t() - target, "fro") / scale < 1e-8);

        RngStream haar = rng.fork(1000 + trial);
        arma::cx_mat xh = reconstruct_waveform(alloc, l_data, BasisKind::haar, &haar);
        REQUIRE(arma::norm(xh * xh.t() - target, "fro") / scale < 1e-8);
    }
}

TEST_CASE("reconstruction edge cases")
{
    Allocation zero;
    zero.energies = arma::vec{0.0, 0.0};
    zero.budget = 0.0;
    arma::cx_mat x = reconstruct_waveform(zero, 4, BasisKind::canonical);
    REQUIRE(arma::abs(x).max() == 0.0);

    Allocation a;
    a.energies = arma::vec{1.0, 1.0, 1.0};
    a.budget = 3.0;
    REQUIRE_THROWS_AS(reconstruct_waveform(a, 2, BasisKind::canonical), std::invalid_argument);
}

TEST_CASE("weighted objective normalization")
{
    REQUIRE(weighted_objective(10.0, 3.0, 10.0, 5.0, 1.0) == 1.0);
    REQUIRE(weighted_objective(3.0, 5.0, 10.0, 5.0, 0.0) == 1.0);
    REQUIRE(weighted_objective(10.0, 5.0, 10.0, 5.0, 0.5) == 1.0);
    REQUIRE_THROWS_AS(weighted_objective(1.0, 1.0, 0.0, 1.0, 0.5), std::domain_error);
}

TEST_CASE("total relative MI normalizes each optimum to one")
{
    arma::vec lam{1.3, 0.8, 0.4};
    arma::vec mu{1.1, 0.9, 0.6};
    double p_train = 2.0, p_data = 6.0, noise = 1.0, gain = 1.0, cee = 0.08;
    int l_data = 30, n = 3;

    WaveformSolution s0 = optimize_sensing(lam, p_train, p_data, noise, n);
    WaveformSolution c0 = optimize_comm(mu, p_data, cee, noise, gain, l_data);

    double at_sensing = total_relative_mi(s0.allocation.energies, lam, mu, s0.objective, c0.objective,
                                          p_train, p_data, cee, noise, noise, gain, l_data, n);
    double sens_part = sensing_mi(lam, s0.allocation.energies, p_train / n, noise, n) / s0.objective;
    REQUIRE(sens_part == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(at_sensing >= 1.0);

    double at_comm = total_relative_mi(c0.allocation.energies, lam, mu, s0.objective, c0.objective, p_train,
                                       p_data, cee, noise, noise, gain, l_data, n);
    double comm_part = comm_mi_upper(mu, c0.allocation.energies, cee, p_data, l_data, noise, gain) /
                       c0.objective;
    REQUIRE(comm_part == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(at_comm >= 1.0);
}

TEST_CASE("joint design dominates equal split on the weighted objective")
{
    RngStream rng(47);
    for (int trial = 0; trial < 100; ++trial) {
        RngStream sub = rng.fork(trial);
        RngStream sub_g = sub.fork(0);
        RngStream sub_h = sub.fork(1);
        int n = 4;
        CorrelationMatrix sig_g = gen_correlation(n, 0.8, 1.0, sub_g);
        CorrelationMatrix sig_h = gen_correlation(n, 0.1, 1.0, sub_h);
        double p_train = 4.0, p_data = 12.0, noise = 1.0, gain = 1.0, cee = 0.05;
        int l_data = 24;

        const arma::vec& lam = sig_g.decomposition.eigenvalues;
        const arma::vec& mu = sig_h.decomposition.eigenvalues;
        WaveformSolution s0 = optimize_sensing(lam, p_train, p_data, noise, n);
        WaveformSolution c0 = optimize_comm(mu, p_data, cee, noise, gain, l_data);
        WaveformSolution j = optimize_weighted(0.5, s0.objective, c0.objective, lam, mu, p_train, p_data,
                                               noise, noise, gain, cee, l_data, n);

        arma::vec equal(n, arma::fill::value(p_data / n));
        double mi_s = sensing_mi(lam, equal, p_train / n, noise, n);
        double mi_c = comm_mi_upper(mu, equal, cee, p_data, l_data, noise, gain);
        double equal_obj = weighted_objective(mi_s, mi_c, s0.objective, c0.objective, 0.5);
        REQUIRE(j.objective >= equal_obj - 1e-9);

        double j_total = total_relative_mi(j.allocation.energies, lam, mu, s0.objective, c0.objective,
                                           p_train, p_data, cee, noise, noise, gain, l_data, n);
        double e_total = total_relative_mi(equal, lam, mu, s0.objective, c0.objective, p_train, p_data, cee,
                                           noise, noise, gain, l_data, n);
        // at w_r = 1/2 the weighted objective is half the total relative MI
        REQUIRE(j_total >= e_total - 1e-9);
    }
}
