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

#include "xlirs/sweep.hpp"

#include "xlirs/channel.hpp"
#include "xlirs/multi_user.hpp"
#include "xlirs/single_user.hpp"
#include "xlirs/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace xlirs
{

namespace
{

bool has_mode(const SweepSpec &spec, SweepMode mode)
{
    return std::find(spec.modes.begin(), spec.modes.end(), mode) != spec.modes.end();
}

SweepRecord compute_point(const ScenarioConfig &base, const SweepSpec &spec,
                          const arma::vec3 &direction, double x_i, arma::uword m)
{
    SweepRecord rec;
    rec.x_i_m = x_i;
    rec.m_antennas = m;

    ScenarioConfig sc = base;
    sc.bs_antennas = m;
    sc.irs_center = base.bs_center + x_i * direction;

    const NearFieldChannels channels = synthesize(build_layout(sc), sc);

    if (has_mode(spec, SweepMode::snr_curves) || has_mode(spec, SweepMode::edof))
    {
        if (has_mode(spec, SweepMode::snr_curves))
        {
            const SpectralSummary summary = gram_eigen(channels.G_phase);
            const SnrEstimates est =
                snr_closed_forms(summary, channels.d_bi, channels.d_ik(0),
                                 sc.noise_powers_w.at(0), sc.tx_power_w, sc.wavelength_m,
                                 sc.bs_antennas, sc.irs_elements());
            rec.rate_bound = std::log2(1.0 + est.upper_bound);
            rec.rate_approx = std::log2(1.0 + est.rank_one);
            rec.rate_closed = std::log2(1.0 + est.aligned);
            rec.edof_value = summary.edof;
        }
        else
            rec.edof_value = edof(channels.G_phase * channels.G_phase.t());
        if (!has_mode(spec, SweepMode::edof))
            rec.edof_value = arma::datum::nan;
    }

    if (has_mode(spec, SweepMode::single_user_ao))
    {
        const AoTrace trace = ao_single_user(channels, sc);
        rec.rate_ao = trace.rate_bits;
        rec.iterations += trace.iterations();
    }

    if (has_mode(spec, SweepMode::multi_user_sca))
    {
        ScaOptions options;
        options.restarts = spec.restarts;
        options.seed = spec.seed;

        double mean = 0.0;
        for (arma::uword ri = 0; ri < spec.realizations; ri++)
        {
            ScenarioConfig sr = sc;
            if (!spec.users_explicit)
                place_users_on_circle(sr, spec.user_circle_radius_m, spec.seed + ri);
            const NearFieldChannels ch_r =
                ri == 0 && spec.users_explicit ? channels : synthesize(build_layout(sr), sr);
            const ScaTrace trace = sca_ao_multi_user(ch_r, sr, options);
            if (ri == 0)
            {
                rec.sum_rate_k = trace.final_sum_rate;
                rec.iterations += trace.iterations();
            }
            mean += trace.final_sum_rate;
        }
        if (spec.realizations > 1)
            rec.sum_rate_k_mean = mean / double(spec.realizations);
    }

    return rec;
}

std::string format_cell(double x)
{
    if (std::isnan(x))
        return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

} // namespace

std::vector<SweepRecord> run_sweep(const ScenarioConfig &scenario, const SweepSpec &spec)
{
    scenario.validate();
    spec.validate();
    if (spec.realizations > 1 && spec.users_explicit)
        throw std::invalid_argument(
            "sweep.realizations: averaging needs circle-placed users, not explicit positions");

    arma::vec3 direction = scenario.user_positions.front() - scenario.bs_center;
    const double span = arma::norm(arma::vec(direction));
    if (!(span > 0.0))
        throw std::invalid_argument("sweep: user 1 coincides with the BS center");
    direction /= span;

    const std::vector<double> grid = placement_grid(spec);
    struct Item
    {
        double x_i;
        arma::uword m;
    };
    std::vector<Item> items;
    for (double x : grid)
        for (arma::uword m : spec.m_list)
            items.push_back({x, m});

    std::vector<SweepRecord> records(items.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;)
        {
            const std::size_t i = next.fetch_add(1);
            if (i >= items.size())
                return;
            const auto start = std::chrono::steady_clock::now();
            try
            {
                records[i] = compute_point(scenario, spec, direction, items[i].x_i, items[i].m);
            }
            catch (const std::exception &e)
            {
                records[i].x_i_m = items[i].x_i;
                records[i].m_antennas = items[i].m;
                records[i].error = e.what();
            }
            records[i].wall_time_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                          start)
                    .count();
        }
    };

    arma::uword threads = spec.threads ? spec.threads : std::thread::hardware_concurrency();
    threads = std::max<arma::uword>(1, std::min<arma::uword>(threads, items.size()));
    std::vector<std::thread> pool;
    for (arma::uword t = 1; t < threads; t++)
        pool.emplace_back(worker);
    worker();
    for (std::thread &t : pool)
        t.join();

    return records;
}

void emit_csv(const std::vector<SweepRecord> &records, std::ostream &out)
{
    bool with_mean = false;
    for (const SweepRecord &r : records)
        if (!std::isnan(r.sum_rate_k_mean))
            with_mean = true;

    out << "x_I,M,rate_ao,rate_bound,rate_approx,rate_closed,sum_rate_K,edof,iterations,error";
    if (with_mean)
        out << ",sum_rate_K_mean";
    out << "\n";

    for (const SweepRecord &r : records)
    {
        std::string error = r.error; // cells must stay comma- and newline-free
        for (char &c : error)
            if (c == ',' || c == '\n' || c == '\r')
                c = ';';
        out << format_cell(r.x_i_m) << ',' << r.m_antennas << ',' << format_cell(r.rate_ao)
            << ',' << format_cell(r.rate_bound) << ',' << format_cell(r.rate_approx) << ','
            << format_cell(r.rate_closed) << ',' << format_cell(r.sum_rate_k) << ','
            << format_cell(r.edof_value) << ',' << r.iterations << ',' << error;
        if (with_mean)
            out << ',' << format_cell(r.sum_rate_k_mean);
        out << "\n";
    }
}

void emit_csv(const std::vector<SweepRecord> &records, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("sweep: cannot open '" + path + "' for writing");
    emit_csv(records, out);
    if (!out.good())
        throw std::runtime_error("sweep: write to '" + path + "' failed");
}

} // namespace xlirs
