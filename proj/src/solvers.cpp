// SPDX-License-Identifier: Apache-2.0
//
// xlirs - near-field modelling and placement study for extremely large
// intelligent reflecting surfaces
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xlirs/solvers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace xlirs
{

static constexpr double power_tol = 1.0e-8; // relative to the budget

BallQpResult solve_ball_qp(const BallQP &qp)
{
    const arma::uword M = qp.Q.n_rows;
    const arma::uword K = qp.linear.n_cols;
    if (qp.Q.n_cols != M || qp.linear.n_rows != M)
        throw std::invalid_argument("solvers: ball program dimension mismatch");
    if (!(qp.budget > 0.0))
        throw std::invalid_argument("solvers: ball budget must be positive");

    // All multiplier evaluations happen in the eigenbasis of Q.
    arma::vec lambda;
    arma::cx_mat V;
    if (!arma::eig_sym(lambda, V, qp.Q))
        throw std::runtime_error("solvers: eigendecomposition of the ball kernel failed");
    lambda.transform([](double x) { return x > 0.0 ? x : 0.0; });
    const arma::cx_mat B = V.t() * qp.linear;

    // Power of the stationary point at a given multiplier; infinite when a
    // null-space component of the linear term meets nu = 0.
    auto power_at = [&](double nu) {
        double p = 0.0;
        for (arma::uword k = 0; k < K; k++)
            for (arma::uword m = 0; m < M; m++)
            {
                const double bm = std::abs(B(m, k));
                if (bm == 0.0)
                    continue;
                const double denom = lambda(m) + nu;
                if (!(denom > 0.0))
                    return std::numeric_limits<double>::infinity();
                p += (bm / denom) * (bm / denom);
            }
        return p;
    };
    auto assemble = [&](double nu, arma::cx_mat &W) {
        arma::cx_mat Wt(M, K);
        for (arma::uword k = 0; k < K; k++)
            for (arma::uword m = 0; m < M; m++)
            {
                const double denom = lambda(m) + nu;
                Wt(m, k) = std::abs(B(m, k)) == 0.0 || !(denom > 0.0)
                               ? arma::cx_double(0.0, 0.0)
                               : B(m, k) / denom;
            }
        W = V * Wt;
    };

    BallQpResult result;
    if (power_at(0.0) <= qp.budget * (1.0 + power_tol))
    {
        assemble(0.0, result.W); // unconstrained stationary point fits the ball
        result.nu = 0.0;
        return result;
    }

    // The power is strictly decreasing in nu; bracket the budget then bisect.
    double lo = 0.0, hi = 1.0;
    for (arma::uword it = 0; it < 200 && power_at(hi) > qp.budget; it++)
        hi *= 2.0;

    double nu = hi;
    for (arma::uword it = 0; it < 200; it++)
    {
        nu = 0.5 * (lo + hi);
        const double p = power_at(nu);
        result.iterations = it + 1;
        if (std::abs(p - qp.budget) <= power_tol * qp.budget)
            break;
        if (p > qp.budget)
            lo = nu;
        else
            hi = nu;
        if ((hi - lo) <= 1.0e-16 * hi)
        {
            nu = hi; // feasible end of a collapsed bracket
            break;
        }
    }
    assemble(nu, result.W);
    result.nu = nu;
    return result;
}

DiskQpResult solve_disk_qp(const DiskQP &qp, const arma::cx_vec &theta_init,
                           double tol, arma::uword max_iter)
{
    const arma::uword N = qp.v.n_elem;
    const bool factored = qp.has_factors();
    if (factored)
    {
        if (qp.factors.n_rows != N || qp.weights.n_elem != qp.factors.n_cols)
            throw std::invalid_argument("solvers: disk kernel factor shape mismatch");
        if (qp.weights.n_elem && qp.weights.min() < 0.0)
            throw std::invalid_argument("solvers: disk kernel factor weights must be >= 0");
    }
    else if (qp.C.n_elem && (qp.C.n_rows != N || qp.C.n_cols != N))
        throw std::invalid_argument("solvers: disk program dimension mismatch");
    if (theta_init.n_elem != N)
        throw std::invalid_argument("solvers: disk start vector has wrong length");

    auto kernel_times = [&](const arma::cx_vec &theta) -> arma::cx_vec {
        if (factored)
            return qp.factors * (qp.weights % (qp.factors.t() * theta));
        if (!qp.C.n_elem)
            return arma::cx_vec(N, arma::fill::zeros);
        return qp.C * theta;
    };
    auto project = [](arma::cx_vec &theta) {
        for (arma::uword n = 0; n < theta.n_elem; n++)
        {
            const double m = std::abs(theta(n));
            if (m > 1.0)
                theta(n) /= m;
        }
    };

    // Largest curvature of the kernel: from the small factor Gram when
    // factored, otherwise from the dense spectrum.
    double lmax = 0.0;
    if (factored)
    {
        if (qp.weights.n_elem)
        {
            const arma::vec root = arma::sqrt(qp.weights);
            arma::cx_mat small = qp.factors.t() * qp.factors;
            small.each_col() %= arma::conv_to<arma::cx_vec>::from(root);
            small.each_row() %= arma::conv_to<arma::cx_rowvec>::from(root.t());
            arma::vec evs;
            if (arma::eig_sym(evs, small))
                lmax = evs.max();
            else
                lmax = std::real(arma::cx_double(arma::trace(small)));
        }
    }
    else if (qp.C.n_elem)
    {
        arma::vec evs;
        if (arma::eig_sym(evs, qp.C))
            lmax = evs.max();
        else
            lmax = std::real(arma::cx_double(arma::trace(qp.C)));
    }

    DiskQpResult result;
    result.theta = theta_init;
    project(result.theta);

    if (!(lmax > 0.0))
    {
        // No curvature: the linear term alone decides, coordinate-wise.
        for (arma::uword n = 0; n < N; n++)
            if (std::abs(qp.v(n)) > 0.0)
                result.theta(n) = qp.v(n) / std::abs(qp.v(n));
        result.objective =
            2.0 * std::real(arma::cx_double(arma::cdot(qp.v, result.theta)));
        result.converged = true;
        return result;
    }

    // One kernel product per iteration serves gradient and objective both.
    const double step = 1.0 / lmax; // equals (1 / 2 lambda_max) on gradient 2 (v - C theta)
    arma::cx_vec ct = kernel_times(result.theta);
    double f = 2.0 * std::real(arma::cx_double(arma::cdot(qp.v, result.theta))) -
               std::real(arma::cx_double(arma::cdot(result.theta, ct)));
    for (arma::uword it = 0; it < max_iter; it++)
    {
        result.theta += step * (qp.v - ct);
        project(result.theta);
        ct = kernel_times(result.theta);
        const double f_new = 2.0 * std::real(arma::cx_double(arma::cdot(qp.v, result.theta))) -
                             std::real(arma::cx_double(arma::cdot(result.theta, ct)));
        result.iterations = it + 1;
        const double change = std::abs(f_new - f);
        f = f_new;
        if (change <= tol * std::max(std::abs(f), 1.0))
        {
            result.converged = true;
            break;
        }
    }
    result.objective = f;
    return result;
}

} // namespace xlirs
