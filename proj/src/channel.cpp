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

#include "xlirs/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace xlirs
{

NearFieldChannels synthesize(const ArrayLayout &layout, const ScenarioConfig &config)
{
    const arma::uword M = layout.bs_offsets.n_cols;
    const arma::uword N = layout.irs_offsets.n_cols;
    const arma::uword K = layout.user_positions.n_cols;
    const double lambda = config.wavelength_m;
    const double wave_number = 2.0 * arma::datum::pi / lambda;

    if (!(layout.d_bi > 0.0))
        throw std::invalid_argument("channel: BS and surface centers coincide");

    NearFieldChannels ch;
    ch.d_bi = layout.d_bi;
    ch.d_ik = layout.d_ik;
    ch.g_amplitude = lambda / (4.0 * arma::datum::pi * layout.d_bi);

    const arma::vec3 zero{0.0, 0.0, 0.0};

    ch.G_phase.set_size(N, M);
    for (arma::uword m = 0; m < M; m++)
    {
        const arma::vec3 bs_off = layout.bs_offsets.col(m);
        for (arma::uword n = 0; n < N; n++)
        {
            const arma::vec3 irs_off = layout.irs_offsets.col(n);
            const double dist = element_distance(layout.irs_center, irs_off,
                                                 layout.bs_center, bs_off);
            ch.G_phase(n, m) = std::polar(1.0, wave_number * dist);
        }
    }
    ch.G = ch.g_amplitude * ch.G_phase;

    ch.r_amplitudes.zeros(K);
    ch.r.resize(K);
    ch.r_phase.resize(K);
    for (arma::uword k = 0; k < K; k++)
    {
        if (!(layout.d_ik(k) > 0.0))
            throw std::invalid_argument("channel: user " + std::to_string(k + 1) +
                                        " coincides with the surface center");
        ch.r_amplitudes(k) = lambda / (4.0 * arma::datum::pi * layout.d_ik(k));

        arma::cx_vec phase(N);
        const arma::vec3 user = layout.user_positions.col(k);
        for (arma::uword n = 0; n < N; n++)
        {
            const arma::vec3 irs_off = layout.irs_offsets.col(n);
            const double dist = element_distance(user, zero, layout.irs_center, irs_off);
            phase(n) = std::polar(1.0, wave_number * dist);
        }
        ch.r_phase[k] = phase;
        ch.r[k] = ch.r_amplitudes(k) * phase;
    }
    return ch;
}

arma::cx_vec effective_user_channel(const NearFieldChannels &channels,
                                    const arma::cx_vec &theta, arma::uword k)
{
    if (k >= channels.r.size())
        throw std::out_of_range("channel: user index " + std::to_string(k) + " out of range");
    if (theta.n_elem != channels.G.n_rows)
        throw std::invalid_argument("channel: reflection vector length mismatch");
    // h_k^H w = r_k^H diag(theta) G w
    return channels.G.t() * (arma::conj(theta) % channels.r[k]);
}

RateReport sum_rate(const NearFieldChannels &channels, const BeamformingState &state,
                    const std::vector<double> &noise_powers_w)
{
    const arma::uword K = channels.r.size();
    if (state.W.n_cols != K)
        throw std::invalid_argument("channel: precoder has " + std::to_string(state.W.n_cols) +
                                    " columns for " + std::to_string(K) + " users");
    if (noise_powers_w.size() != K)
        throw std::invalid_argument("channel: need one noise power per user");

    RateReport report;
    report.per_user.zeros(K);
    for (arma::uword k = 0; k < K; k++)
    {
        const arma::cx_vec h = effective_user_channel(channels, state.theta, k);
        const arma::cx_rowvec gains = h.t() * state.W; // entry j = h_k^H w_j
        const double signal = std::norm(gains(k));
        double interference = 0.0;
        for (arma::uword j = 0; j < K; j++)
            if (j != k)
                interference += std::norm(gains(j));
        report.per_user(k) = std::log2(1.0 + signal / (interference + noise_powers_w[k]));
    }
    report.sum_rate = arma::accu(report.per_user);
    return report;
}

} // namespace xlirs
