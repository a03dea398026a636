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

#include "xlirs/single_user.hpp"

#include <cmath>
#include <stdexcept>

namespace xlirs
{

static constexpr double phase_floor = 1.0e-14; // magnitudes below take phase zero

arma::cx_vec mrt_precoder(const arma::cx_vec &h, double tx_power_w)
{
    const double scale = arma::norm(h);
    if (!(scale > 0.0))
        throw std::invalid_argument("single_user: zero effective channel");
    return std::sqrt(tx_power_w) / scale * h;
}

arma::cx_vec aligned_phases(const arma::cx_vec &w, const arma::cx_mat &G,
                            const arma::cx_vec &r)
{
    if (w.n_elem != G.n_cols || r.n_elem != G.n_rows)
        throw std::invalid_argument("single_user: dimension mismatch in phase alignment");

    const arma::cx_vec through = G * w;
    arma::cx_vec theta(G.n_rows);
    for (arma::uword n = 0; n < G.n_rows; n++)
    {
        const arma::cx_double t = std::conj(r(n)) * through(n);
        theta(n) = std::abs(t) < phase_floor ? arma::cx_double(1.0, 0.0)
                                             : std::polar(1.0, -std::arg(t));
    }
    return theta;
}

AoTrace ao_single_user(const NearFieldChannels &channels, const ScenarioConfig &config,
                       double tol, arma::uword max_iter, arma::uword user)
{
    if (user >= channels.r.size())
        throw std::out_of_range("single_user: user index out of range");
    const arma::cx_vec &r = channels.r[user];
    const double sigma2 = config.noise_powers_w.at(user);

    auto objective = [&](const arma::cx_vec &theta, const arma::cx_vec &w) {
        const arma::cx_double s = arma::cdot(r % arma::conj(theta), channels.G * w);
        return std::norm(s); // |r^H diag(theta) G w|^2
    };

    AoTrace trace;
    // Start from a precoder aimed at the surface centroid, phases aligned to it.
    arma::cx_vec w = mrt_precoder(channels.G.t() * arma::cx_vec(channels.G.n_rows,
                                                                arma::fill::ones) /
                                      double(channels.G.n_rows),
                                  config.tx_power_w);
    arma::cx_vec theta = aligned_phases(w, channels.G, r);
    trace.objective.push_back(objective(theta, w));

    for (arma::uword it = 0; it < max_iter; it++)
    {
        const arma::cx_vec h = channels.G.t() * (arma::conj(theta) % r);
        w = mrt_precoder(h, config.tx_power_w);
        theta = aligned_phases(w, channels.G, r);

        const double obj = objective(theta, w);
        const double prev = trace.objective.back();
        trace.objective.push_back(obj);
        if (std::abs(obj - prev) <= tol * std::max(prev, 1.0e-300))
        {
            trace.converged = true;
            break;
        }
    }

    trace.final_state.W = w;
    trace.final_state.theta = theta;
    trace.rate_bits = std::log2(1.0 + trace.objective.back() / sigma2);
    return trace;
}

} // namespace xlirs
