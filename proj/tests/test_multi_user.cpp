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

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace xlirs;

namespace
{

double exact_rate_bits(arma::cx_double a, double interference_plus_noise)
{
    return std::log2(1.0 + std::norm(a) / interference_plus_noise);
}

BeamformingState random_state(std::mt19937_64 &rng, const ScenarioConfig &sc,
                              const NearFieldChannels &ch)
{
    BeamformingState state;
    state.theta = oracles::random_unit_modulus(rng, ch.G.n_rows);
    state.W = oracles::randn_c_mat(rng, sc.bs_antennas, sc.users);
    const double power = arma::accu(arma::square(arma::abs(state.W)));
    state.W *= std::sqrt(sc.tx_power_w / power);
    return state;
}

} // namespace

TEST_CASE("per-user surrogate is a tight concave minorant")
{
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 2000; trial++)
    {
        const arma::cx_double a_t = 3.0 * oracles::randn_c(rng);
        const double b_t = 0.05 + 4.0 * oracles::u01(rng);
        const SurrogateCoefficients coeffs = make_surrogate(a_t, b_t);

        // tight at the anchor
        const double at_anchor = surrogate_value(coeffs, a_t, std::norm(a_t) + b_t);
        REQUIRE(std::abs(at_anchor - exact_rate_bits(a_t, b_t)) < 1.0e-9);

        // below the rate everywhere else
        for (int p = 0; p < 50; p++)
        {
            const arma::cx_double a = 4.0 * oracles::randn_c(rng);
            const double b = 0.01 + 5.0 * oracles::u01(rng);
            const double surrogate = surrogate_value(coeffs, a, std::norm(a) + b);
            REQUIRE(surrogate <= exact_rate_bits(a, b) + 1.0e-9);
        }
    }

    SECTION("a silent anchor drops the user from the surrogate")
    {
        const SurrogateCoefficients coeffs = make_surrogate({0.0, 0.0}, 1.0);
        REQUIRE(coeffs.quad_weight == 0.0);
        REQUIRE(std::abs(coeffs.linear_weight) == 0.0);
        REQUIRE(coeffs.constant_nats == 0.0);
        REQUIRE(surrogate_value(coeffs, {1.0, -2.0}, 7.0) == 0.0);
    }
}

TEST_CASE("state-level surrogate is tight at its anchor and below the rate elsewhere")
{
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 25; trial++)
    {
        const ScenarioConfig sc = oracles::random_scenario(rng);
        const NearFieldChannels ch = oracles::make_channels(sc);
        const BeamformingState anchor = random_state(rng, sc, ch);

        const double exact_at_anchor = sum_rate(ch, anchor, sc.noise_powers_w).sum_rate;
        REQUIRE(surrogate_sum(ch, sc, anchor, anchor) ==
                Catch::Approx(exact_at_anchor).margin(1.0e-9));

        for (int p = 0; p < 8; p++)
        {
            const BeamformingState eval = random_state(rng, sc, ch);
            const double exact = sum_rate(ch, eval, sc.noise_powers_w).sum_rate;
            REQUIRE(surrogate_sum(ch, sc, anchor, eval) <= exact + 1.0e-9);
        }
    }
}

TEST_CASE("precoder update never lowers the exact sum rate")
{
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 15; trial++)
    {
        const ScenarioConfig sc = oracles::random_scenario(rng);
        const NearFieldChannels ch = oracles::make_channels(sc);
        BeamformingState state = random_state(rng, sc, ch);

        const double before = sum_rate(ch, state, sc.noise_powers_w).sum_rate;
        const arma::cx_mat W_new = precoder_step(ch, state.theta, state.W, sc);

        REQUIRE(arma::accu(arma::square(arma::abs(W_new))) <=
                sc.tx_power_w * (1.0 + 1.0e-6));

        // surrogate ascent plus tightness at the anchor forces exact ascent
        BeamformingState after = state;
        after.W = W_new;
        const double now = sum_rate(ch, after, sc.noise_powers_w).sum_rate;
        REQUIRE(now >= before - 1.0e-9 * std::max(1.0, before));
    }
}

TEST_CASE("reflection update keeps unit modulus and never lowers the exact sum rate")
{
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 15; trial++)
    {
        const ScenarioConfig sc = oracles::random_scenario(rng);
        const NearFieldChannels ch = oracles::make_channels(sc);
        BeamformingState state = random_state(rng, sc, ch);

        const double before = sum_rate(ch, state, sc.noise_powers_w).sum_rate;
        const arma::cx_vec theta_new = phase_step(ch, state.W, state.theta, sc);
        REQUIRE(arma::abs(arma::abs(theta_new) - 1.0).max() < 1.0e-12);

        BeamformingState after = state;
        after.theta = theta_new;
        const double now = sum_rate(ch, after, sc.noise_powers_w).sum_rate;
        REQUIRE(now >= before - 1.0e-9 * std::max(1.0, before));
    }
}

TEST_CASE("surrogate ascent produces a monotone, honest trace")
{
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 10; trial++)
    {
        const ScenarioConfig sc = oracles::random_scenario(rng);
        const NearFieldChannels ch = oracles::make_channels(sc);
        ScaOptions options;
        options.seed = 100 + trial;
        const ScaTrace trace = sca_ao_multi_user(ch, sc, options);

        REQUIRE(trace.sum_rate.size() >= 1);
        REQUIRE(trace.sum_rate.size() == trace.surrogate.size());
        for (size_t i = 1; i < trace.sum_rate.size(); i++)
            REQUIRE(trace.sum_rate[i] >=
                    trace.sum_rate[i - 1] - 1.0e-12 * std::max(1.0, trace.sum_rate[i - 1]));

        REQUIRE(trace.final_sum_rate == Catch::Approx(trace.sum_rate.back()).margin(1.0e-12));
        REQUIRE(trace.final_state.W.n_rows == sc.bs_antennas);
        REQUIRE(trace.final_state.W.n_cols == sc.users);
        REQUIRE(arma::abs(arma::abs(trace.final_state.theta) - 1.0).max() < 1.0e-12);
        REQUIRE(arma::accu(arma::square(arma::abs(trace.final_state.W))) <=
                sc.tx_power_w * (1.0 + 1.0e-6));

        // the recorded final rate is the rate of the recorded state
        const double replay = sum_rate(ch, trace.final_state, sc.noise_powers_w).sum_rate;
        REQUIRE(replay == Catch::Approx(trace.final_sum_rate).epsilon(1.0e-9));
    }
}

TEST_CASE("surrogate ascent is deterministic for fixed options")
{
    std::mt19937_64 rng(56);
    const ScenarioConfig sc = oracles::random_scenario(rng);
    const NearFieldChannels ch = oracles::make_channels(sc);
    ScaOptions options;
    options.restarts = 3;
    options.seed = 9;
    const ScaTrace a = sca_ao_multi_user(ch, sc, options);
    const ScaTrace b = sca_ao_multi_user(ch, sc, options);
    REQUIRE(a.sum_rate == b.sum_rate);
    REQUIRE(arma::abs(a.final_state.theta - b.final_state.theta).max() == 0.0);
    REQUIRE(arma::abs(a.final_state.W - b.final_state.W).max() == 0.0);
}

TEST_CASE("with one user the surrogate ascent recovers the alternating baseline")
{
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 5; trial++)
    {
        ScenarioConfig sc = oracles::random_scenario(rng);
        sc.users = 1;
        sc.noise_powers_w.resize(1);
        sc.user_positions.resize(1);
        const NearFieldChannels ch = oracles::make_channels(sc);

        const AoTrace ao = ao_single_user(ch, sc);
        const ScaTrace sca = sca_ao_multi_user(ch, sc, ScaOptions{});
        // the single-user-focused start hands the ascent the baseline state,
        // so it can only improve from there
        REQUIRE(sca.final_sum_rate >= ao.rate_bits - 1.0e-9);
    }
}

TEST_CASE("extra users never report less than the best lone user")
{
    std::mt19937_64 rng(58);
    const ScenarioConfig sc = oracles::random_scenario(rng);
    const NearFieldChannels ch = oracles::make_channels(sc);

    double best_single = 0.0;
    for (arma::uword k = 0; k < sc.users; k++)
        best_single = std::max(best_single, ao_single_user(ch, sc, 1.0e-8, 200, k).rate_bits);

    const ScaTrace sca = sca_ao_multi_user(ch, sc, ScaOptions{});
    REQUIRE(sca.final_sum_rate >= best_single - 1.0e-9);
}
