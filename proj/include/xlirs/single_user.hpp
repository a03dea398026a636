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

#ifndef xlirs_single_user_H
#define xlirs_single_user_H

#include "xlirs/channel.hpp"

#include <vector>

namespace xlirs
{

// Record of one alternating-optimization run for a single served user.
struct AoTrace
{
    std::vector<double> objective; // |r^H diag(theta) G w|^2, entry 0 is the init
    bool converged = false;
    BeamformingState final_state;  // W has one column
    double rate_bits = 0.0;        // log2(1 + objective / sigma^2)

    arma::uword iterations() const { return objective.empty() ? 0 : objective.size() - 1; }
};

// Maximum-ratio precoder for an effective channel: sqrt(P) h / ||h||.
arma::cx_vec mrt_precoder(const arma::cx_vec &h, double tx_power_w);

// Reflection phases that co-phase every surface element for a fixed
// precoder: theta_n = exp(-j arg(t_n)) with t_n = conj(r_n) (G w)_n, the
// closed-form maximizer of |r^H diag(theta) G w| over unit-modulus theta.
arma::cx_vec aligned_phases(const arma::cx_vec &w, const arma::cx_mat &G,
                            const arma::cx_vec &r);

// Alternates maximum-ratio precoding and phase alignment from a
// deterministic start (precoder aimed at the surface centroid). The
// objective trace never decreases; convergence is a relative objective
// change below tol. Serves the user with index `user` alone at full power.
AoTrace ao_single_user(const NearFieldChannels &channels, const ScenarioConfig &config,
                       double tol = 1.0e-8, arma::uword max_iter = 200,
                       arma::uword user = 0);

} // namespace xlirs

#endif
