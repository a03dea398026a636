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

#ifndef xlirs_channel_H
#define xlirs_channel_H

#include "xlirs/geometry.hpp"

#include <armadillo>
#include <vector>

namespace xlirs
{

// Line-of-sight spherical-wavefront channels of one placement. Phases carry
// exact per-element path lengths; amplitudes use the center-to-center
// distance, so each matrix factors exactly as amplitude times its
// unit-modulus phase copy.
struct NearFieldChannels
{
    arma::cx_mat G;                 // N x M, BS to surface
    std::vector<arma::cx_vec> r;    // K vectors of length N, surface to user
    arma::cx_mat G_phase;           // unit-modulus copy of G
    std::vector<arma::cx_vec> r_phase;
    double g_amplitude = 0.0;       // lambda / (4 pi d_BI)
    arma::vec r_amplitudes;         // lambda / (4 pi d_Ik), one per user
    double d_bi = 0.0;
    arma::vec d_ik;
};

// One candidate transmit configuration: precoder columns w_k and the
// unit-modulus reflection coefficients theta_n.
struct BeamformingState
{
    arma::cx_mat W;     // M x K
    arma::cx_vec theta; // N
};

// Per-user and summed achievable rates in bit/s/Hz.
struct RateReport
{
    double sum_rate = 0.0;
    arma::vec per_user;
};

// Builds the spherical-wavefront channels for a realized layout. Phase of
// entry (n, m) is 2 pi / lambda times the exact element-to-element distance.
NearFieldChannels synthesize(const ArrayLayout &layout, const ScenarioConfig &config);

// Effective BS-to-user channel h_k through the reflection: the received
// scalar is h_k^H w, with h_k = G^H (conj(theta) o r_k).
arma::cx_vec effective_user_channel(const NearFieldChannels &channels,
                                    const arma::cx_vec &theta, arma::uword k);

// Exact rates under Gaussian signaling, treating interference as noise:
// R_k = log2(1 + |h_k^H w_k|^2 / (sum_{j != k} |h_k^H w_j|^2 + sigma_k^2)).
RateReport sum_rate(const NearFieldChannels &channels, const BeamformingState &state,
                    const std::vector<double> &noise_powers_w);

} // namespace xlirs

#endif
