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

#ifndef xlirs_multi_user_H
#define xlirs_multi_user_H

#include "xlirs/channel.hpp"
#include "xlirs/solvers.hpp"

#include <cstdint>
#include <vector>

namespace xlirs
{

// Concave minorant of one user's rate around an anchor operating point
// (anchor_a, anchor_b) = (own complex gain, interference plus noise). The
// minorant touches the rate exactly at the anchor.
struct SurrogateCoefficients
{
    arma::cx_double anchor_a{0.0, 0.0};
    double anchor_b = 1.0;
    arma::cx_double linear_weight{0.0, 0.0}; // conj(anchor_a) / anchor_b
    double quad_weight = 0.0;   // |anchor_a|^2 / (anchor_b (|anchor_a|^2 + anchor_b))
    double constant_nats = 0.0; // ln(1 + s) - s at the anchor SINR s
};

// Builds the minorant weights at an anchor; a zero anchor gain yields
// all-zero weights (that user drops out of the surrogate).
SurrogateCoefficients make_surrogate(arma::cx_double anchor_a, double anchor_b);

// Minorant value in bit/s/Hz at own gain `a` and total received power
// `quad` = |a|^2 + interference + noise.
double surrogate_value(const SurrogateCoefficients &coeffs, arma::cx_double a, double quad);

// Record of one successive-convex-approximation run.
struct ScaTrace
{
    std::vector<double> sum_rate;  // exact sum rate per accepted outer iteration
    std::vector<double> surrogate; // surrogate total anchored at the previous iterate
    bool converged = false;
    BeamformingState final_state;
    double final_sum_rate = 0.0;

    arma::uword iterations() const { return sum_rate.empty() ? 0 : sum_rate.size() - 1; }
};

struct ScaOptions
{
    double tol = 1.0e-3;         // bit/s/Hz, on the exact sum-rate change
    arma::uword max_outer = 100;
    arma::uword restarts = 1;    // 1 = deterministic starts only
    std::uint64_t seed = 1;      // seeds the extra random restarts
};

// One precoder update: maximizes the surrogate anchored at (theta, W_anchor)
// over the transmit-power ball, phases held fixed.
arma::cx_mat precoder_step(const NearFieldChannels &channels, const arma::cx_vec &theta,
                           const arma::cx_mat &W_anchor, const ScenarioConfig &config);

// One reflection update: maximizes the surrogate anchored at (W, theta_anchor)
// over per-element unit disks, projects back to unit modulus, and keeps
// theta_anchor whenever the projection would lower the exact sum rate.
arma::cx_vec phase_step(const NearFieldChannels &channels, const arma::cx_mat &W,
                        const arma::cx_vec &theta_anchor, const ScenarioConfig &config);

// Surrogate total (bit/s/Hz) anchored at one operating point and evaluated at
// another; a minorant of the exact sum rate, tight when eval == anchor.
double surrogate_sum(const NearFieldChannels &channels, const ScenarioConfig &config,
                     const BeamformingState &anchor, const BeamformingState &eval);

// Full alternating surrogate ascent for sum-rate maximization. Runs a small
// deterministic family of starts (joint centroid-aimed init plus one
// single-user-focused init per user) and any extra seeded random restarts,
// and returns the best run. Accepted iterates never lower the exact sum rate.
ScaTrace sca_ao_multi_user(const NearFieldChannels &channels, const ScenarioConfig &config,
                           const ScaOptions &options);
ScaTrace sca_ao_multi_user(const NearFieldChannels &channels, const ScenarioConfig &config,
                           double tol = 1.0e-3, arma::uword max_outer = 100);

} // namespace xlirs

#endif
