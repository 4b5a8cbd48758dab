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

#include "jcas/waveform_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace jcas {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;

double zero_clamp_threshold(const arma::vec& eigs)
{
    double scale = eigs.n_elem ? arma::abs(eigs).max() : 0.0;
    return kEigZeroTol * std::max(1.0, scale);
}

// Exact water-filling: q_i = (wl - floors_i)^+ with sum over usable modes
// equal to budget. floors entries <= 0 mark unusable modes. Returns wl.
double waterfill(const arma::vec& floors, double budget, arma::vec& out)
{
    const arma::uword n = floors.n_elem;
    out.zeros(n);

    std::vector<arma::uword> usable;
    for (arma::uword i = 0; i < n; ++i)
        if (floors(i) > 0.0)
            usable.push_back(i);
    if (usable.empty())
        throw std::domain_error("waterfill: no usable modes");

    std::sort(usable.begin(), usable.end(),
              [&](arma::uword a, arma::uword b) { return floors(a) < floors(b); });

    const arma::uword m = usable.size();
    double prefix = 0.0;
    double wl = 0.0;
    for (arma::uword k = 1; k <= m; ++k) {
        prefix += floors(usable[k - 1]);
        double candidate = (budget + prefix) / double(k);
        if (candidate > floors(usable[k - 1]) && (k == m || candidate <= floors(usable[k]))) {
            wl = candidate;
            for (arma::uword j = 0; j < k; ++j)
                out(usable[j]) = candidate - floors(usable[j]);
            return wl;
        }
    }
    throw std::runtime_error("waterfill: active-set search failed");
}

arma::uvec positive_modes(const arma::vec& q)
{
    std::vector<arma::uword> idx;
    for (arma::uword i = 0; i < q.n_elem; ++i)
        if (q(i) > 0.0)
            idx.push_back(i);
    return arma::uvec(idx);
}

} // namespace

WaveformSolution optimize_sensing(const arma::vec& eigs_g, double p_train, double p_data, double noise_div,
                                  int n)
{
    if (!(p_data > 0.0))
        throw std::invalid_argument("optimize_sensing: p_data must be positive");
    if (p_train < 0.0)
        throw std::invalid_argument("optimize_sensing: p_train must be nonnegative");
    if (!(noise_div > 0.0))
        throw std::domain_error("optimize_sensing: noise divisor must be positive");

    const double tol = zero_clamp_threshold(eigs_g);
    const double train_per_mode = p_train / double(n);

    arma::vec floors(eigs_g.n_elem, arma::fill::zeros);
    bool any = false;
    for (arma::uword i = 0; i < eigs_g.n_elem; ++i) {
        if (eigs_g(i) > tol) {
            floors(i) = train_per_mode + noise_div / eigs_g(i);
            any = true;
        }
    }
    if (!any)
        throw std::domain_error("optimize_sensing: all sensing eigenvalues are zero");

    WaveformSolution sol;
    double wl = waterfill(floors, p_data, sol.allocation.energies);
    sol.allocation.budget = p_data;
    sol.active_set = positive_modes(sol.allocation.energies);
    sol.multiplier = -noise_div / (wl * kLn2);
    sol.objective = sensing_mi(eigs_g, sol.allocation.energies, train_per_mode, noise_div, n);
    return sol;
}

WaveformSolution optimize_comm(const arma::vec& eigs_h, double p_data, double cee, double noise_power,
                               double comm_gain, int l_data)
{
    if (!(p_data > 0.0))
        throw std::invalid_argument("optimize_comm: p_data must be positive");
    if (cee < 0.0 || cee >= comm_gain)
        throw std::domain_error("optimize_comm: cee must lie in [0, comm_gain)");
    if (!(noise_power > 0.0))
        throw std::domain_error("optimize_comm: noise power must be positive");
    if (l_data < 1)
        throw std::invalid_argument("optimize_comm: l_data must be >= 1");

    const double tol = zero_clamp_threshold(eigs_h);
    const double denom = noise_power + (p_data / double(l_data)) * cee;
    const double gain = comm_gain - cee;

    arma::vec floors(eigs_h.n_elem, arma::fill::zeros);
    bool any = false;
    for (arma::uword i = 0; i < eigs_h.n_elem; ++i) {
        if (eigs_h(i) > tol) {
            floors(i) = denom / (eigs_h(i) * gain);
            any = true;
        }
    }
    if (!any)
        throw std::domain_error("optimize_comm: all channel eigenvalues are zero");

    WaveformSolution sol;
    double wl = waterfill(floors, p_data, sol.allocation.energies);
    sol.allocation.budget = p_data;
    sol.active_set = positive_modes(sol.allocation.energies);
    sol.multiplier = -1.0 / (wl * kLn2);
    sol.objective = comm_mi_upper(eigs_h, sol.allocation.energies, cee, p_data, l_data, noise_power, comm_gain);
    return sol;
}

namespace {

struct WeightedProblem
{
    arma::vec nu;  // lambda_i / noise_div, zero-clamped
    arma::vec phi; // (comm_gain - cee) mu_i / ((p_data/l_data) cee + noise_power)
    double eps = 0.0;
    double eta = 0.0;
    double train_per_mode = 0.0;
};

WeightedProblem weighted_problem(double w_r, double f_r, double f_c, const arma::vec& eigs_g,
                                 const arma::vec& eigs_h, double p_train, double p_data, double noise_div,
                                 double noise_power, double comm_gain, double cee, int l_data, int n)
{
    if (w_r < 0.0 || w_r > 1.0)
        throw std::invalid_argument("optimize_weighted: w_r must lie in [0, 1]");
    if (!(f_r > 0.0) || !(f_c > 0.0))
        throw std::domain_error("optimize_weighted: f_r and f_c must be positive");
    if (eigs_g.n_elem != eigs_h.n_elem)
        throw std::invalid_argument("optimize_weighted: eigenvalue vectors differ in length");
    if (cee < 0.0 || cee >= comm_gain)
        throw std::domain_error("optimize_weighted: cee must lie in [0, comm_gain)");

    WeightedProblem w;
    w.train_per_mode = p_train / double(n);
    w.eps = w_r * double(n) / (kLn2 * f_r);
    w.eta = (1.0 - w_r) * double(l_data) / (kLn2 * f_c);

    const double tol_g = zero_clamp_threshold(eigs_g);
    const double tol_h = zero_clamp_threshold(eigs_h);
    const double denom = noise_power + (p_data / double(l_data)) * cee;

    w.nu.zeros(eigs_g.n_elem);
    w.phi.zeros(eigs_h.n_elem);
    for (arma::uword i = 0; i < eigs_g.n_elem; ++i) {
        if (eigs_g(i) > tol_g)
            w.nu(i) = eigs_g(i) / noise_div;
        if (eigs_h(i) > tol_h)
            w.phi(i) = (comm_gain - cee) * eigs_h(i) / denom;
    }
    return w;
}

// marginal utility of mode i at allocation x
double weighted_marginal(const WeightedProblem& w, arma::uword i, double x)
{
    double g = 0.0;
    if (w.nu(i) > 0.0)
        g += w.eps * w.nu(i) / (1.0 + w.nu(i) * (w.train_per_mode + x));
    if (w.phi(i) > 0.0)
        g += w.eta * w.phi(i) / (1.0 + w.phi(i) * x);
    return g;
}

// closed-form KKT allocation of mode i for multiplier 1/x_inv (x_inv = 1/zeta)
double weighted_mode_energy(const WeightedProblem& w, arma::uword i, double x_inv)
{
    const bool has_nu = w.nu(i) > 0.0;
    const bool has_phi = w.phi(i) > 0.0;
    if (!has_nu && !has_phi)
        return 0.0;

    if (!has_phi) {
        double a = w.train_per_mode + 1.0 / w.nu(i);
        return std::max(w.eps * x_inv - a, 0.0);
    }
    if (!has_nu)
        return std::max(w.eta * x_inv - 1.0 / w.phi(i), 0.0);

    double a = w.train_per_mode + 1.0 / w.nu(i);
    double b = 1.0 / w.phi(i);
    double d = (a - b) + (w.eta - w.eps) * x_inv;
    double root = std::sqrt(d * d + 4.0 * w.eps * w.eta * x_inv * x_inv);
    return std::max(0.5 * ((w.eps + w.eta) * x_inv - (a + b) + root), 0.0);
}

} // namespace

WaveformSolution optimize_weighted(double w_r, double f_r, double f_c, const arma::vec& eigs_g,
                                   const arma::vec& eigs_h, double p_train, double p_data, double noise_div,
                                   double noise_power, double comm_gain, double cee, int l_data, int n)
{
    if (!(p_data > 0.0))
        throw std::invalid_argument("optimize_weighted: p_data must be positive");

    WeightedProblem w = weighted_problem(w_r, f_r, f_c, eigs_g, eigs_h, p_train, p_data, noise_div,
                                         noise_power, comm_gain, cee, l_data, n);

    // bisection bracket on 1/zeta, upper end from the paper's interval:
    // zeta_lo = min_i marginal at full budget
    double zeta_lo = arma::datum::inf;
    for (arma::uword i = 0; i < w.nu.n_elem; ++i) {
        double g = weighted_marginal(w, i, p_data);
        if (g > 0.0)
            zeta_lo = std::min(zeta_lo, g);
    }
    if (!std::isfinite(zeta_lo))
        throw std::domain_error("optimize_weighted: no mode has positive marginal utility");

    const double x_hi = 1.0 / zeta_lo;
    const double tol = 1e-10 * p_data;

    arma::vec energies(w.nu.n_elem, arma::fill::zeros);
    auto budget_at = [&](double x_inv) {
        double total = 0.0;
        for (arma::uword i = 0; i < w.nu.n_elem; ++i) {
            energies(i) = weighted_mode_energy(w, i, x_inv);
            total += energies(i);
        }
        return total;
    };

    double lo = 0.0, hi = x_hi, x = x_hi;
    double residual = budget_at(x) - p_data;
    if (residual < -tol) {
        std::ostringstream msg;
        msg << "optimize_weighted: bracket failure, budget short by " << -residual << " at interval end";
        throw std::runtime_error(msg.str());
    }
    for (int iter = 0; iter < 200 && std::abs(residual) > tol; ++iter) {
        x = 0.5 * (lo + hi);
        residual = budget_at(x) - p_data;
        (residual > 0.0 ? hi : lo) = x;
    }
    if (std::abs(residual) > tol) {
        std::ostringstream msg;
        msg << "optimize_weighted: bisection did not converge, residual " << residual;
        throw std::runtime_error(msg.str());
    }

    WaveformSolution sol;
    sol.allocation.energies = energies;
    sol.allocation.budget = p_data;
    sol.active_set = positive_modes(energies);
    sol.multiplier = 1.0 / x;
    double mi_s = sensing_mi(eigs_g, energies, w.train_per_mode, noise_div, n);
    double mi_c = comm_mi_upper(eigs_h, energies, cee, p_data, l_data, noise_power, comm_gain);
    sol.objective = weighted_objective(mi_s, mi_c, f_r, f_c, w_r);
    return sol;
}

arma::cx_mat reconstruct_waveform(const Allocation& allocation, int l_data, BasisKind kind, RngStream* rng)
{
    const arma::uword n = allocation.energies.n_elem;
    if (l_data < static_cast<int>(n))
        throw std::invalid_argument("reconstruct_waveform: l_data must be >= the number of modes");
    allocation.validate();

    arma::cx_mat psi;
    if (kind == BasisKind::canonical) {
        psi = arma::cx_mat(l_data, n, arma::fill::zeros);
        for (arma::uword i = 0; i < n; ++i)
            psi(i, i) = 1.0;
    } else {
        if (!rng)
            throw std::invalid_argument("reconstruct_waveform: haar basis needs a random stream");
        arma::cx_mat a(l_data, n);
        for (int r = 0; r < l_data; ++r)
            for (arma::uword c = 0; c < n; ++c)
                a(r, c) = rng->cgauss();
        arma::cx_mat q, rmat;
        if (!arma::qr_econ(q, rmat, a))
            throw std::runtime_error("reconstruct_waveform: QR factorization failed");
        for (arma::uword c = 0; c < n; ++c) {
            std::complex<double> d = rmat(c, c);
            if (std::abs(d) > 0.0)
                q.col(c) *= d / std::abs(d);
        }
        psi = q;
    }

    arma::vec root = arma::sqrt(arma::clamp(allocation.energies, 0.0, arma::datum::inf));
    arma::cx_mat scaled =
        arma::diagmat(arma::cx_vec(root, arma::vec(n, arma::fill::zeros))) * psi.t(); // N x L_d
    if (allocation.basis.n_elem)
        return allocation.basis * scaled;
    return scaled;
}

double weighted_objective(double mi_sens, double mi_comm, double f_r, double f_c, double w_r)
{
    if (!(f_r > 0.0) || !(f_c > 0.0))
        throw std::domain_error("weighted_objective: f_r and f_c must be positive");
    return w_r * mi_sens / f_r + (1.0 - w_r) * mi_comm / f_c;
}

double total_relative_mi(const arma::vec& energies, const arma::vec& eigs_g, const arma::vec& eigs_h,
                         double f_r, double f_c, double p_train, double p_data, double cee, double noise_div,
                         double noise_power, double comm_gain, int l_data, int n)
{
    if (!(f_r > 0.0) || !(f_c > 0.0))
        throw std::domain_error("total_relative_mi: f_r and f_c must be positive");
    double mi_s = sensing_mi(eigs_g, energies, p_train / double(n), noise_div, n);
    double mi_c = comm_mi_upper(eigs_h, energies, cee, p_data, l_data, noise_power, comm_gain);
    return mi_s / f_r + mi_c / f_c;
}

namespace {

KktCertificate certificate_from_marginals(const arma::vec& q, const arma::vec& marginal_at_q,
                                          const arma::vec& marginal_at_zero, const arma::uvec& usable,
                                          double multiplier, double p_data)
{
    KktCertificate cert;
    cert.budget_error = std::abs(arma::accu(q) - p_data);
    for (arma::uword k = 0; k < usable.n_elem; ++k) {
        arma::uword i = usable(k);
        if (q(i) > 0.0)
            cert.stationarity = std::max(cert.stationarity, std::abs(marginal_at_q(i) - multiplier));
        else
            cert.slackness = std::max(cert.slackness, marginal_at_zero(i) - multiplier);
    }
    cert.slackness = std::max(cert.slackness, 0.0);
    return cert;
}

} // namespace

KktCertificate kkt_check_sensing(const WaveformSolution& sol, const arma::vec& eigs_g, double p_train,
                                 double p_data, double noise_div, int n)
{
    const arma::vec& q = sol.allocation.energies;
    const double tol = zero_clamp_threshold(eigs_g);
    const double t = p_train / double(n);

    arma::vec at_q(q.n_elem, arma::fill::zeros), at_zero(q.n_elem, arma::fill::zeros);
    std::vector<arma::uword> usable;
    for (arma::uword i = 0; i < q.n_elem; ++i) {
        if (eigs_g(i) <= tol)
            continue;
        double floor_i = t + noise_div / eigs_g(i);
        at_q(i) = 1.0 / (kLn2 * (floor_i + q(i)));
        at_zero(i) = 1.0 / (kLn2 * floor_i);
        usable.push_back(i);
    }
    double u_star = -sol.multiplier / noise_div; // alpha = -noise_div / (wl ln2)
    return certificate_from_marginals(q, at_q, at_zero, arma::uvec(usable), u_star, p_data);
}

KktCertificate kkt_check_comm(const WaveformSolution& sol, const arma::vec& eigs_h, double p_data, double cee,
                              double noise_power, double comm_gain, int l_data)
{
    const arma::vec& q = sol.allocation.energies;
    const double tol = zero_clamp_threshold(eigs_h);
    const double denom = noise_power + (p_data / double(l_data)) * cee;
    const double gain = comm_gain - cee;

    arma::vec at_q(q.n_elem, arma::fill::zeros), at_zero(q.n_elem, arma::fill::zeros);
    std::vector<arma::uword> usable;
    for (arma::uword i = 0; i < q.n_elem; ++i) {
        if (eigs_h(i) <= tol)
            continue;
        double floor_i = denom / (eigs_h(i) * gain);
        at_q(i) = 1.0 / (kLn2 * (floor_i + q(i)));
        at_zero(i) = 1.0 / (kLn2 * floor_i);
        usable.push_back(i);
    }
    double u_star = -sol.multiplier; // beta' = -1 / (wl ln2)
    return certificate_from_marginals(q, at_q, at_zero, arma::uvec(usable), u_star, p_data);
}

KktCertificate kkt_check_weighted(const WaveformSolution& sol, double w_r, double f_r, double f_c,
                                  const arma::vec& eigs_g, const arma::vec& eigs_h, double p_train,
                                  double p_data, double noise_div, double noise_power, double comm_gain,
                                  double cee, int l_data, int n)
{
    WeightedProblem w = weighted_problem(w_r, f_r, f_c, eigs_g, eigs_h, p_train, p_data, noise_div,
                                         noise_power, comm_gain, cee, l_data, n);
    const arma::vec& q = sol.allocation.energies;

    arma::vec at_q(q.n_elem, arma::fill::zeros), at_zero(q.n_elem, arma::fill::zeros);
    std::vector<arma::uword> usable;
    for (arma::uword i = 0; i < q.n_elem; ++i) {
        if (w.nu(i) <= 0.0 && w.phi(i) <= 0.0)
            continue;
        at_q(i) = weighted_marginal(w, i, q(i));
        at_zero(i) = weighted_marginal(w, i, 0.0);
        usable.push_back(i);
    }
    return certificate_from_marginals(q, at_q, at_zero, arma::uvec(usable), sol.multiplier, p_data);
}

} // namespace jcas
