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

#include "xlirs/multi_user.hpp"

#include "xlirs/single_user.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace xlirs
{

static constexpr double phase_floor = 1.0e-14;

SurrogateCoefficients make_surrogate(arma::cx_double anchor_a, double anchor_b)
{
    if (!(anchor_b > 0.0))
        throw std::invalid_argument("multi_user: anchor interference-plus-noise must be positive");

    SurrogateCoefficients c;
    c.anchor_a = anchor_a;
    c.anchor_b = anchor_b;
    const double p = std::norm(anchor_a);
    if (p == 0.0)
        return c; // degenerate anchor: user drops out of the surrogate
    c.linear_weight = std::conj(anchor_a) / anchor_b;
    c.quad_weight = p / (anchor_b * (p + anchor_b));
    c.constant_nats = std::log1p(p / anchor_b) - p / anchor_b;
    return c;
}

double surrogate_value(const SurrogateCoefficients &coeffs, arma::cx_double a, double quad)
{
    const double nats = coeffs.constant_nats +
                        2.0 * std::real(coeffs.linear_weight * a) -
                        coeffs.quad_weight * quad;
    return nats / std::numbers::ln2_v<double>;
}

// Noise-normalized effective channels for every user at fixed phases
// (column k = h_k / sigma_k); keeps the surrogate programs near unit scale.
static arma::cx_mat normalized_effective(const NearFieldChannels &channels,
                                         const arma::cx_vec &theta,
                                         const ScenarioConfig &config)
{
    const arma::uword K = channels.r.size();
    arma::cx_mat H(channels.G.n_cols, K);
    for (arma::uword k = 0; k < K; k++)
        H.col(k) = effective_user_channel(channels, theta, k) /
                   std::sqrt(config.noise_powers_w.at(k));
    return H;
}

// Anchor coefficients for every user from normalized gains(k, j) = h_k^H w_j.
static std::vector<SurrogateCoefficients> anchors_from_gains(const arma::cx_mat &gains)
{
    const arma::uword K = gains.n_rows;
    std::vector<SurrogateCoefficients> coeffs(K);
    for (arma::uword k = 0; k < K; k++)
    {
        double b = 1.0; // unit noise after normalization
        for (arma::uword j = 0; j < K; j++)
            if (j != k)
                b += std::norm(gains(k, j));
        coeffs[k] = make_surrogate(gains(k, k), b);
    }
    return coeffs;
}

arma::cx_mat precoder_step(const NearFieldChannels &channels, const arma::cx_vec &theta,
                           const arma::cx_mat &W_anchor, const ScenarioConfig &config)
{
    const arma::uword K = channels.r.size();
    const arma::uword M = channels.G.n_cols;
    if (W_anchor.n_rows != M || W_anchor.n_cols != K)
        throw std::invalid_argument("multi_user: precoder anchor has wrong shape");

    const arma::cx_mat H = normalized_effective(channels, theta, config);
    const arma::cx_mat gains = H.t() * W_anchor;
    const std::vector<SurrogateCoefficients> coeffs = anchors_from_gains(gains);

    BallQP qp;
    qp.budget = config.tx_power_w;
    qp.linear.zeros(M, K);
    qp.Q.zeros(M, M);
    for (arma::uword k = 0; k < K; k++)
    {
        qp.linear.col(k) = std::conj(coeffs[k].linear_weight) * H.col(k);
        if (coeffs[k].quad_weight > 0.0)
            qp.Q += coeffs[k].quad_weight * (H.col(k) * H.col(k).t());
    }
    return solve_ball_qp(qp).W;
}

arma::cx_vec phase_step(const NearFieldChannels &channels, const arma::cx_mat &W,
                        const arma::cx_vec &theta_anchor, const ScenarioConfig &config)
{
    const arma::uword K = channels.r.size();
    const arma::uword N = channels.G.n_rows;
    if (W.n_cols != K || theta_anchor.n_elem != N)
        throw std::invalid_argument("multi_user: phase anchor has wrong shape");

    // gain of user k through precoder j is u_{k,j}^H theta
    const arma::cx_mat through = channels.G * W;
    std::vector<std::vector<arma::cx_vec>> u(K);
    arma::cx_mat gains(K, K);
    for (arma::uword k = 0; k < K; k++)
    {
        const arma::cx_vec rk = channels.r[k] / std::sqrt(config.noise_powers_w.at(k));
        u[k].resize(K);
        for (arma::uword j = 0; j < K; j++)
        {
            u[k][j] = rk % arma::conj(through.col(j));
            gains(k, j) = arma::cdot(u[k][j], theta_anchor);
        }
    }
    const std::vector<SurrogateCoefficients> coeffs = anchors_from_gains(gains);

    DiskQP qp;
    qp.v.zeros(N);
    qp.factors.set_size(N, K * K); // kernel sum_k gamma_k sum_j u_kj u_kj^H, factored
    qp.weights.set_size(K * K);
    arma::uword cols = 0;
    for (arma::uword k = 0; k < K; k++)
    {
        if (std::norm(coeffs[k].anchor_a) == 0.0)
            continue;
        qp.v += std::conj(coeffs[k].linear_weight) * u[k][k];
        for (arma::uword j = 0; j < K; j++)
        {
            qp.factors.col(cols) = u[k][j];
            qp.weights(cols) = coeffs[k].quad_weight;
            cols++;
        }
    }
    qp.factors.resize(N, cols);
    qp.weights.resize(cols);

    arma::cx_vec theta = solve_disk_qp(qp, theta_anchor).theta;
    for (arma::uword n = 0; n < N; n++) // back to unit modulus
    {
        const double m = std::abs(theta(n));
        theta(n) = m < phase_floor ? arma::cx_double(1.0, 0.0) : theta(n) / m;
    }

    // keep the anchor whenever the projection lost exact sum rate
    const double before = sum_rate(channels, BeamformingState{W, theta_anchor},
                                   config.noise_powers_w).sum_rate;
    const double after = sum_rate(channels, BeamformingState{W, theta},
                                  config.noise_powers_w).sum_rate;
    return after >= before ? theta : theta_anchor;
}

double surrogate_sum(const NearFieldChannels &channels, const ScenarioConfig &config,
                     const BeamformingState &anchor, const BeamformingState &eval)
{
    const arma::uword K = channels.r.size();
    const arma::cx_mat gains_anchor =
        normalized_effective(channels, anchor.theta, config).t() * anchor.W;
    const arma::cx_mat gains_eval =
        normalized_effective(channels, eval.theta, config).t() * eval.W;
    const std::vector<SurrogateCoefficients> coeffs = anchors_from_gains(gains_anchor);

    double total = 0.0;
    for (arma::uword k = 0; k < K; k++)
    {
        double quad = 1.0;
        for (arma::uword j = 0; j < K; j++)
            quad += std::norm(gains_eval(k, j));
        total += surrogate_value(coeffs[k], gains_eval(k, k), quad);
    }
    return total;
}

static ScaTrace run_sca(const NearFieldChannels &channels, const ScenarioConfig &config,
                        const BeamformingState &init, double tol, arma::uword max_outer)
{
    ScaTrace trace;
    BeamformingState state = init;
    double rate = sum_rate(channels, state, config.noise_powers_w).sum_rate;
    trace.sum_rate.push_back(rate);
    trace.surrogate.push_back(rate); // the minorant is tight at its own anchor

    for (arma::uword outer = 0; outer < max_outer; outer++)
    {
        const BeamformingState anchor = state;

        const arma::cx_mat W_new = precoder_step(channels, state.theta, state.W, config);
        const double rate_w = sum_rate(channels, BeamformingState{W_new, state.theta},
                                       config.noise_powers_w).sum_rate;
        if (rate_w >= rate)
            state.W = W_new;

        state.theta = phase_step(channels, state.W, state.theta, config);

        const double rate_new = sum_rate(channels, state, config.noise_powers_w).sum_rate;
        trace.surrogate.push_back(surrogate_sum(channels, config, anchor, state));
        trace.sum_rate.push_back(rate_new);

        const bool done = std::abs(rate_new - rate) < tol;
        rate = rate_new;
        if (done)
        {
            trace.converged = true;
            break;
        }
    }

    trace.final_state = state;
    trace.final_sum_rate = rate;
    return trace;
}

// Joint start: beam at the surface centroid, phases serving a virtual user at
// the centroid of all user positions, per-user maximum-ratio columns at P/K.
static BeamformingState centroid_init(const NearFieldChannels &channels,
                                      const ScenarioConfig &config)
{
    const arma::uword N = channels.G.n_rows;
    const arma::uword K = channels.r.size();

    ScenarioConfig virt = config;
    virt.users = 1;
    arma::vec3 centroid{0.0, 0.0, 0.0};
    for (const arma::vec3 &p : config.user_positions)
        centroid += p;
    centroid /= double(config.users);
    virt.user_positions = {centroid};
    virt.noise_powers_w = {config.noise_powers_w.front()};
    const NearFieldChannels virt_ch = synthesize(build_layout(virt), virt);

    BeamformingState s;
    const arma::cx_vec w0 = mrt_precoder(
        channels.G.t() * arma::cx_vec(N, arma::fill::ones) / double(N), config.tx_power_w);
    s.theta = aligned_phases(w0, channels.G, virt_ch.r[0]);
    s.W.set_size(channels.G.n_cols, K);
    for (arma::uword k = 0; k < K; k++)
        s.W.col(k) = mrt_precoder(effective_user_channel(channels, s.theta, k),
                                  config.tx_power_w / double(K));
    return s;
}

ScaTrace sca_ao_multi_user(const NearFieldChannels &channels, const ScenarioConfig &config,
                           const ScaOptions &options)
{
    const arma::uword K = channels.r.size();
    const arma::uword M = channels.G.n_cols;
    const arma::uword N = channels.G.n_rows;
    if (K < 1)
        throw std::invalid_argument("multi_user: need at least one user");

    std::vector<BeamformingState> starts;
    starts.push_back(centroid_init(channels, config));

    // One single-user-focused start per user: that user's alternating
    // optimum at full power, everyone else silent.
    for (arma::uword k = 0; k < K; k++)
    {
        const AoTrace focus = ao_single_user(channels, config, 1.0e-8, 200, k);
        BeamformingState s;
        s.W.zeros(M, K);
        s.W.col(k) = focus.final_state.W.col(0);
        s.theta = focus.final_state.theta;
        starts.push_back(s);
    }

    std::mt19937_64 rng(options.seed);
    auto u01 = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
    for (arma::uword extra = 1; extra < options.restarts; extra++)
    {
        BeamformingState s;
        s.theta.set_size(N);
        for (arma::uword n = 0; n < N; n++)
            s.theta(n) = std::polar(1.0, 2.0 * arma::datum::pi * u01());
        s.W.set_size(M, K);
        for (arma::uword k = 0; k < K; k++)
            s.W.col(k) = mrt_precoder(effective_user_channel(channels, s.theta, k),
                                      config.tx_power_w / double(K));
        starts.push_back(s);
    }

    ScaTrace best;
    bool have_best = false;
    for (const BeamformingState &init : starts)
    {
        ScaTrace trace = run_sca(channels, config, init, options.tol, options.max_outer);
        if (!have_best || trace.final_sum_rate > best.final_sum_rate)
        {
            best = std::move(trace);
            have_best = true;
        }
    }
    return best;
}

ScaTrace sca_ao_multi_user(const NearFieldChannels &channels, const ScenarioConfig &config,
                           double tol, arma::uword max_outer)
{
    ScaOptions options;
    options.tol = tol;
    options.max_outer = max_outer;
    return sca_ao_multi_user(channels, config, options);
}

} // namespace xlirs
