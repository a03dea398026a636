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

#ifndef xlirs_solvers_H
#define xlirs_solvers_H

#include <armadillo>

namespace xlirs
{

// Concave quadratic program over a total-power ball:
//   maximize   sum_k 2 Re{ linear_k^H w_k } - w_k^H Q w_k
//   subject to sum_k ||w_k||^2 <= budget
// with Q Hermitian positive semidefinite, shared across columns.
struct BallQP
{
    arma::cx_mat linear; // M x K, column k multiplies w_k in the linear term
    arma::cx_mat Q;      // M x M
    double budget = 0.0;
};

struct BallQpResult
{
    arma::cx_mat W;             // M x K optimizer
    double nu = 0.0;            // power-constraint multiplier
    arma::uword iterations = 0; // bisection steps taken
};

// Concave quadratic program over per-coordinate unit disks:
//   maximize   2 Re{ v^H theta } - theta^H C theta
//   subject to |theta_n| <= 1 for every n
// with C Hermitian positive semidefinite. The kernel is given either densely
// in C or, when `factors` has columns, as C = factors diag(weights)
// factors^H (the dense C may then stay empty); the factored form makes every
// kernel product cost O(N r) instead of O(N^2).
struct DiskQP
{
    arma::cx_vec v;
    arma::cx_mat C;
    arma::cx_mat factors; // N x r, optional
    arma::vec weights;    // r nonnegative entries, one per factor column

    bool has_factors() const { return factors.n_cols > 0; }
};

struct DiskQpResult
{
    arma::cx_vec theta;
    double objective = 0.0;
    bool converged = false;
    arma::uword iterations = 0;
};

// Stationarity solver: w_k(nu) = (Q + nu I)^{-1} linear_k with nu bisected
// until the power meets the budget to 1e-8 relative, or nu = 0 if the
// unconstrained optimizer already fits inside the ball. Works in the
// eigenbasis of Q, so each bisection step costs O(M K). With a singular Q,
// linear-term components in the null space make the power diverge as nu
// drops to zero and the bisection absorbs them; exact zero components take
// the minimum-norm solution.
BallQpResult solve_ball_qp(const BallQP &qp);

// Projected gradient ascent with the fixed safe step 1 / (2 lambda_max(C));
// every iterate stays feasible and the objective never decreases. Stops on a
// relative objective change below tol.
DiskQpResult solve_disk_qp(const DiskQP &qp, const arma::cx_vec &theta_init,
                           double tol = 1.0e-9, arma::uword max_iter = 5000);

} // namespace xlirs

#endif
