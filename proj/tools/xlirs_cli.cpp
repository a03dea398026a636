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
#include "xlirs/config_io.hpp"
#include "xlirs/multi_user.hpp"
#include "xlirs/single_user.hpp"
#include "xlirs/spectral.hpp"
#include "xlirs/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{

struct CommonArgs
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> modes;
    std::vector<arma::uword> m_list;
};

// Config file plus command-line overrides; a fresh seed re-places the
// randomly positioned users unless the file pinned them.
std::pair<xlirs::ScenarioConfig, xlirs::SweepSpec> load(const CommonArgs &args)
{
    auto [scenario, spec] = xlirs::parse_config(args.config_path);
    if (args.seed)
    {
        spec.seed = *args.seed;
        if (!spec.users_explicit)
            xlirs::place_users_on_circle(scenario, spec.user_circle_radius_m, spec.seed);
    }
    if (!args.modes.empty())
    {
        spec.modes.clear();
        for (const std::string &name : args.modes)
            spec.modes.push_back(xlirs::parse_mode(name));
    }
    if (!args.m_list.empty())
        spec.m_list = args.m_list;
    spec.validate();
    return {scenario, spec};
}

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

void dump_channels(const xlirs::NearFieldChannels &ch, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << "kind,row,col,real,imag\n";
    for (arma::uword m = 0; m < ch.G.n_cols; m++)
        for (arma::uword n = 0; n < ch.G.n_rows; n++)
            out << "G," << n << ',' << m << ',' << num(ch.G(n, m).real()) << ','
                << num(ch.G(n, m).imag()) << "\n";
    for (std::size_t k = 0; k < ch.r.size(); k++)
        for (arma::uword n = 0; n < ch.r[k].n_elem; n++)
            out << "r" << k + 1 << ',' << n << ",0," << num(ch.r[k](n).real()) << ','
                << num(ch.r[k](n).imag()) << "\n";
}

int run_sweep_cmd(const CommonArgs &args, const std::string &out_path, arma::uword threads,
                  arma::uword realizations, arma::uword restarts)
{
    auto [scenario, spec] = load(args);
    if (threads)
        spec.threads = threads;
    if (realizations)
        spec.realizations = realizations;
    if (restarts)
        spec.restarts = restarts;
    spec.validate();

    const std::vector<xlirs::SweepRecord> records = xlirs::run_sweep(scenario, spec);
    xlirs::emit_csv(records, out_path);

    arma::uword failed = 0;
    double total_ms = 0.0;
    for (const xlirs::SweepRecord &r : records)
    {
        if (!r.error.empty())
        {
            failed++;
            std::cerr << "point x_I=" << r.x_i_m << " M=" << r.m_antennas
                      << " failed: " << r.error << "\n";
        }
        total_ms += r.wall_time_ms;
    }
    std::cerr << records.size() << " grid points -> " << out_path << " ("
              << num(total_ms / 1000.0) << " s of point work";
    if (failed)
        std::cerr << ", " << failed << " failed";
    std::cerr << ")\n";
    return failed == 0 ? 0 : 1;
}

int run_solve_cmd(const CommonArgs &args, std::optional<double> x_i,
                  std::optional<arma::uword> m_override, const std::string &dump_path,
                  const std::string &trace_path)
{
    auto [scenario, spec] = load(args);
    if (m_override)
        scenario.bs_antennas = *m_override;
    if (x_i)
    {
        arma::vec3 direction = scenario.user_positions.front() - scenario.bs_center;
        const double span = arma::norm(arma::vec(direction));
        if (!(span > 0.0))
            throw std::invalid_argument("solve: user 1 coincides with the BS center");
        scenario.irs_center = scenario.bs_center + (*x_i / span) * direction;
    }
    scenario.validate();

    const xlirs::ArrayLayout layout = xlirs::build_layout(scenario);
    const xlirs::NearFieldChannels channels = xlirs::synthesize(layout, scenario);
    if (!dump_path.empty())
        dump_channels(channels, dump_path);

    std::cout << "x_I = " << num(layout.d_bi) << " m, M = " << scenario.bs_antennas
              << ", N = " << scenario.irs_elements() << ", K = " << scenario.users << "\n";

    const xlirs::SpectralSummary summary = xlirs::gram_eigen(channels.G_phase);
    const xlirs::SnrEstimates est = xlirs::snr_closed_forms(
        summary, channels.d_bi, channels.d_ik(0), scenario.noise_powers_w.at(0),
        scenario.tx_power_w, scenario.wavelength_m, scenario.bs_antennas,
        scenario.irs_elements());
    std::cout << "rate_bound  = " << num(std::log2(1.0 + est.upper_bound)) << " bit/s/Hz\n";
    std::cout << "rate_approx = " << num(std::log2(1.0 + est.rank_one)) << " bit/s/Hz\n";
    std::cout << "rate_closed = " << num(std::log2(1.0 + est.aligned)) << " bit/s/Hz\n";
    if (est.single_antenna)
        std::cout << "rate_single_antenna = " << num(std::log2(1.0 + *est.single_antenna))
                  << " bit/s/Hz\n";

    const xlirs::AoTrace ao = xlirs::ao_single_user(channels, scenario);
    std::cout << "rate_ao     = " << num(ao.rate_bits) << " bit/s/Hz ("
              << ao.iterations() << " iterations, "
              << (ao.converged ? "converged" : "iteration cap") << ")\n";

    xlirs::ScaOptions options;
    options.restarts = spec.restarts;
    options.seed = spec.seed;
    const xlirs::ScaTrace sca = xlirs::sca_ao_multi_user(channels, scenario, options);
    std::cout << "sum_rate_K  = " << num(sca.final_sum_rate) << " bit/s/Hz ("
              << sca.iterations() << " outer iterations, "
              << (sca.converged ? "converged" : "iteration cap") << ")\n";

    std::cout << "edof        = " << num(summary.edof) << "\n";
    std::cout << "numerical_rank = " << summary.numerical_rank << "\n";

    if (!trace_path.empty())
    {
        std::ofstream out(trace_path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open '" + trace_path + "' for writing");
        out << "iteration,sum_rate,surrogate\n";
        for (std::size_t i = 0; i < sca.sum_rate.size(); i++)
            out << i << ',' << num(sca.sum_rate[i]) << ',' << num(sca.surrogate[i]) << "\n";
    }
    return 0;
}

int run_edof_cmd(const CommonArgs &args, const std::string &out_path,
                 std::optional<arma::uword> m_override)
{
    auto [scenario, spec] = load(args);
    if (m_override)
        scenario.bs_antennas = *m_override;
    scenario.validate();

    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out << "x_I,mu1,mu2,mu3,mu4,mu5,kappa1,kappa2,kappa3,kappa4,kappa5,edof\n";

    arma::vec3 direction = scenario.user_positions.front() - scenario.bs_center;
    const double span = arma::norm(arma::vec(direction));
    if (!(span > 0.0))
        throw std::invalid_argument("edof: user 1 coincides with the BS center");
    direction /= span;

    for (double x : xlirs::placement_grid(spec))
    {
        xlirs::ScenarioConfig sc = scenario;
        sc.irs_center = scenario.bs_center + x * direction;
        const xlirs::NearFieldChannels channels = xlirs::synthesize(xlirs::build_layout(sc), sc);
        const xlirs::SpectralSummary summary = xlirs::gram_eigen(channels.G_phase);

        out << num(x);
        for (arma::uword i = 0; i < 5; i++)
            out << ',' << (i < summary.eigenvalues.n_elem ? num(summary.eigenvalues(i)) : "");
        for (arma::uword i = 0; i < 5; i++)
            out << ',' << (i < summary.retained ? num(summary.kappas(i)) : "");
        out << ',' << num(summary.edof) << "\n";
    }
    std::cerr << "EDoF curve -> " << out_path << "\n";
    return 0;
}

int run_apertures_cmd(const CommonArgs &args)
{
    auto [scenario, spec] = load(args);
    (void)spec;
    const xlirs::ApertureReport report = xlirs::aperture_report(scenario);
    std::cout << "surface aperture D_R            = " << num(report.irs_aperture_m) << " m\n";
    std::cout << "BS aperture D_B                 = " << num(report.bs_aperture_m) << " m\n";
    std::cout << "Rayleigh surface<->user         = " << num(report.rayleigh_user_m)
              << " m   (2 D_R^2 / lambda)\n";
    std::cout << "Rayleigh BS<->surface (sum)     = " << num(report.rayleigh_bs_sum_m)
              << " m   (2 (D_R + D_B)^2 / lambda)\n";
    std::cout << "Rayleigh BS<->surface (sum-sq)  = " << num(report.rayleigh_bs_sumsq_m)
              << " m   (2 (D_R^2 + D_B^2) / lambda)\n";
    std::cout << "note: the two BS-side conventions differ by the 2 D_R D_B cross term;"
                 " both are reported\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    // The sweep parallelizes across grid points; keep BLAS single-threaded.
    setenv("OPENBLAS_NUM_THREADS", "1", 0);

    CLI::App app{"Near-field placement study for an extremely large reflecting surface"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&args](CLI::App *cmd, bool with_modes) {
        cmd->add_option("--config", args.config_path, "Scenario/sweep description file");
        cmd->add_option("--seed", args.seed, "Override the user-placement / restart seed");
        if (with_modes)
        {
            cmd->add_option("--modes", args.modes,
                            "Modes to run: snr_curves single_user_ao multi_user_sca edof")
                ->delimiter(',');
            cmd->add_option("--m-list", args.m_list, "BS antenna counts to sweep")
                ->delimiter(',');
        }
    };

    std::string out_path = "sweep.csv";
    arma::uword threads = 0, realizations = 0, restarts = 0;
    CLI::App *sweep = app.add_subcommand("sweep", "Rate/EDoF curves over surface placements");
    add_common(sweep, true);
    sweep->add_option("--out", out_path, "Output CSV path");
    sweep->add_option("--threads", threads, "Worker threads (default: hardware)");
    sweep->add_option("--realizations", realizations,
                      "User placements to average (adds sum_rate_K_mean)");
    sweep->add_option("--restarts", restarts, "Random restarts on top of deterministic starts");

    std::optional<double> x_i;
    std::optional<arma::uword> m_override;
    std::string dump_path, trace_path;
    CLI::App *solve = app.add_subcommand("solve", "Full solve at one placement");
    add_common(solve, false);
    solve->add_option("--x-i", x_i, "Surface-center distance from the BS in meters");
    solve->add_option("--m", m_override, "BS antenna count");
    solve->add_option("--dump-channels", dump_path, "Write the channel entries to a CSV");
    solve->add_option("--trace", trace_path, "Write the surrogate-ascent trace to a CSV");

    std::string edof_out = "edof.csv";
    std::optional<arma::uword> edof_m;
    CLI::App *edof = app.add_subcommand("edof", "Gram spectrum and EDoF over placements");
    add_common(edof, false);
    edof->add_option("--out", edof_out, "Output CSV path");
    edof->add_option("--m", edof_m, "BS antenna count");

    CLI::App *apertures =
        app.add_subcommand("report-apertures", "Aperture sizes and near-field boundaries");
    add_common(apertures, false);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (sweep->parsed())
            return run_sweep_cmd(args, out_path, threads, realizations, restarts);
        if (solve->parsed())
            return run_solve_cmd(args, x_i, m_override, dump_path, trace_path);
        if (edof->parsed())
            return run_edof_cmd(args, edof_out, edof_m);
        if (apertures->parsed())
            return run_apertures_cmd(args);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
