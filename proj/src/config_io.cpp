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

#include "xlirs/config_io.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace xlirs
{

double dbm_to_watt(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

void SweepSpec::validate() const
{
    if (!(step_m > 0.0))
        throw std::invalid_argument("sweep.step: must be positive");
    if (stop_m < start_m)
        throw std::invalid_argument("sweep.stop: must not be below sweep.start");
    if (modes.empty())
        throw std::invalid_argument("sweep.modes: must name at least one mode");
    if (m_list.empty())
        throw std::invalid_argument("sweep.m_list: must name at least one antenna count");
    for (arma::uword m : m_list)
        if (m < 1)
            throw std::invalid_argument("sweep.m_list: antenna counts must be at least 1");
    if (realizations < 1)
        throw std::invalid_argument("sweep.realizations: must be at least 1");
    if (!(user_circle_radius_m > 0.0))
        throw std::invalid_argument("sweep.user_circle_radius: must be positive");
    if (restarts < 1)
        throw std::invalid_argument("sweep.restarts: must be at least 1");
}

SweepMode parse_mode(const std::string &name)
{
    if (name == "snr_curves")
        return SweepMode::snr_curves;
    if (name == "single_user_ao")
        return SweepMode::single_user_ao;
    if (name == "multi_user_sca")
        return SweepMode::multi_user_sca;
    if (name == "edof")
        return SweepMode::edof;
    throw std::invalid_argument("sweep.modes: unknown mode '" + name + "'");
}

std::string mode_name(SweepMode mode)
{
    switch (mode)
    {
    case SweepMode::snr_curves:
        return "snr_curves";
    case SweepMode::single_user_ao:
        return "single_user_ao";
    case SweepMode::multi_user_sca:
        return "multi_user_sca";
    case SweepMode::edof:
        return "edof";
    }
    return "unknown";
}

namespace
{

std::string trim(const std::string &s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string &s)
{
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, ','))
    {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

double parse_double(const std::string &field, const std::string &value)
{
    try
    {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (!trim(value.substr(used)).empty())
            throw std::invalid_argument("trailing text");
        return x;
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("config: " + field + ": not a number: '" + value + "'");
    }
}

arma::uword parse_count(const std::string &field, const std::string &value)
{
    const double x = parse_double(field, value);
    if (!(x >= 0.0) || x != std::floor(x) || x > 1.0e12)
        throw std::invalid_argument("config: " + field + ": not a whole number: '" + value + "'");
    return arma::uword(x);
}

// Power with unit: "30 dBm", "-90dBm", "1.0 W" or a bare number meaning dBm.
double parse_power_w(const std::string &field, const std::string &value)
{
    std::string v = trim(value);
    bool watt = false, dbm = true;
    if (v.size() >= 3 && (v.substr(v.size() - 3) == "dBm" || v.substr(v.size() - 3) == "dbm"))
        v = trim(v.substr(0, v.size() - 3));
    else if (!v.empty() && (v.back() == 'W' || v.back() == 'w'))
    {
        watt = true;
        dbm = false;
        v = trim(v.substr(0, v.size() - 1));
    }
    const double x = parse_double(field, v);
    (void)watt;
    return dbm ? dbm_to_watt(x) : x;
}

arma::vec3 parse_vec3(const std::string &field, const std::string &value)
{
    std::string v = value;
    for (char &c : v)
        if (c == ',')
            c = ' ';
    std::stringstream ss(v);
    arma::vec3 out{0.0, 0.0, 0.0};
    for (int i = 0; i < 3; i++)
        if (!(ss >> out[i]))
            throw std::invalid_argument("config: " + field + ": need three numbers, got '" +
                                        value + "'");
    std::string rest;
    if (ss >> rest)
        throw std::invalid_argument("config: " + field + ": need exactly three numbers, got '" +
                                    value + "'");
    return out;
}

} // namespace

void place_users_on_circle(ScenarioConfig &config, double radius_m, std::uint64_t seed)
{
    if (config.user_positions.empty())
        throw std::invalid_argument("config: user1 position missing");
    config.user_positions.resize(config.users, config.user_positions.front());

    std::mt19937_64 rng(seed);
    auto u01 = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
    const arma::vec3 center = config.user_positions.front();
    for (arma::uword k = 1; k < config.users; k++)
    {
        const double angle = 2.0 * arma::datum::pi * u01();
        config.user_positions[k] = center + arma::vec3{radius_m * std::cos(angle),
                                                       radius_m * std::sin(angle), 0.0};
    }
}

std::pair<ScenarioConfig, SweepSpec> parse_config(const std::string &path)
{
    ScenarioConfig scenario;
    SweepSpec sweep;

    // Defaults before any file is read; only the first user is pinned, the
    // rest come from the seeded circle below.
    scenario.user_positions = {arma::vec3{0.0, 150.0, 0.0}};
    scenario.noise_powers_w = {dbm_to_watt(-90.0)};
    bool spacing_given = false;
    std::vector<std::pair<arma::uword, arma::vec3>> explicit_users;

    if (!path.empty())
    {
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("config: cannot open '" + path + "'");

        std::string line, section;
        arma::uword line_no = 0;
        while (std::getline(in, line))
        {
            line_no++;
            const auto comment = line.find_first_of("#;");
            if (comment != std::string::npos)
                line = line.substr(0, comment);
            line = trim(line);
            if (line.empty())
                continue;

            if (line.front() == '[')
            {
                if (line.back() != ']')
                    throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                                ": unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                if (section != "scenario" && section != "sweep")
                    throw std::invalid_argument("config: unknown section '[" + section + "]'");
                continue;
            }

            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                            ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            const std::string field = section + "." + key;

            if (section == "scenario")
            {
                if (key == "wavelength")
                    scenario.wavelength_m = parse_double(field, value);
                else if (key == "bs_antennas")
                    scenario.bs_antennas = parse_count(field, value);
                else if (key == "irs_horizontal")
                    scenario.irs_horizontal = parse_count(field, value);
                else if (key == "irs_vertical")
                    scenario.irs_vertical = parse_count(field, value);
                else if (key == "users")
                    scenario.users = parse_count(field, value);
                else if (key == "tx_power")
                    scenario.tx_power_w = parse_power_w(field, value);
                else if (key == "noise_power")
                {
                    scenario.noise_powers_w.clear();
                    for (const std::string &item : split_list(value))
                        scenario.noise_powers_w.push_back(parse_power_w(field, item));
                    if (scenario.noise_powers_w.empty())
                        throw std::invalid_argument("config: " + field + ": empty list");
                }
                else if (key == "bs_center")
                    scenario.bs_center = parse_vec3(field, value);
                else if (key == "irs_center")
                    scenario.irs_center = parse_vec3(field, value);
                else if (key == "element_spacing")
                {
                    scenario.element_spacing_m = parse_double(field, value);
                    spacing_given = true;
                }
                else if (key.rfind("user", 0) == 0 && key.size() > 4)
                {
                    const arma::uword idx = parse_count(field, key.substr(4));
                    if (idx < 1)
                        throw std::invalid_argument("config: " + field + ": users count from 1");
                    explicit_users.emplace_back(idx - 1, parse_vec3(field, value));
                }
                else
                    throw std::invalid_argument("config: unknown key '" + key +
                                                "' in [scenario]");
            }
            else if (section == "sweep")
            {
                if (key == "start")
                    sweep.start_m = parse_double(field, value);
                else if (key == "stop")
                    sweep.stop_m = parse_double(field, value);
                else if (key == "step")
                    sweep.step_m = parse_double(field, value);
                else if (key == "modes")
                {
                    sweep.modes.clear();
                    for (const std::string &item : split_list(value))
                        sweep.modes.push_back(parse_mode(item));
                }
                else if (key == "m_list")
                {
                    sweep.m_list.clear();
                    for (const std::string &item : split_list(value))
                        sweep.m_list.push_back(parse_count(field, item));
                }
                else if (key == "seed")
                    sweep.seed = std::uint64_t(parse_count(field, value));
                else if (key == "user_circle_radius")
                    sweep.user_circle_radius_m = parse_double(field, value);
                else if (key == "realizations")
                    sweep.realizations = parse_count(field, value);
                else if (key == "threads")
                    sweep.threads = parse_count(field, value);
                else if (key == "restarts")
                    sweep.restarts = parse_count(field, value);
                else
                    throw std::invalid_argument("config: unknown key '" + key + "' in [sweep]");
            }
            else
                throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                            ": key outside any section");
        }
    }

    if (!spacing_given)
        scenario.element_spacing_m = 0.5 * scenario.wavelength_m;

    if (scenario.noise_powers_w.size() == 1)
        scenario.noise_powers_w.resize(scenario.users, scenario.noise_powers_w.front());

    scenario.user_positions.resize(scenario.users, scenario.user_positions.front());
    for (const auto &[idx, pos] : explicit_users)
    {
        if (idx >= scenario.users)
            throw std::invalid_argument("config: scenario.user" + std::to_string(idx + 1) +
                                        ": only " + std::to_string(scenario.users) +
                                        " users configured");
        scenario.user_positions[idx] = pos;
        if (idx > 0)
            sweep.users_explicit = true;
    }
    if (!sweep.users_explicit)
        place_users_on_circle(scenario, sweep.user_circle_radius_m, sweep.seed);

    sweep.validate();
    scenario.validate();
    return {scenario, sweep};
}

std::vector<double> placement_grid(const SweepSpec &spec)
{
    spec.validate();
    const arma::uword count =
        arma::uword(std::floor((spec.stop_m - spec.start_m) / spec.step_m + 1.0e-9)) + 1;
    std::vector<double> grid(count);
    for (arma::uword i = 0; i < count; i++)
        grid[i] = spec.start_m + double(i) * spec.step_m;
    return grid;
}

} // namespace xlirs
