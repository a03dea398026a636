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

#ifndef xlirs_config_io_H
#define xlirs_config_io_H

#include "xlirs/geometry.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace xlirs
{

// What the placement sweep computes at each grid point.
enum class SweepMode
{
    snr_curves,     // closed-form rate predictions from the Gram spectrum
    single_user_ao, // alternating optimization baseline for user 1
    multi_user_sca, // surrogate ascent sum rate for all users
    edof            // effective degrees of freedom of the Gram
};

// Sweep controls parsed alongside the scenario.
struct SweepSpec
{
    double start_m = 10.0; // surface-center distance from the BS, along the
    double stop_m = 140.0; // BS-to-user-1 line
    double step_m = 2.0;
    std::vector<SweepMode> modes{SweepMode::snr_curves, SweepMode::single_user_ao,
                                 SweepMode::multi_user_sca, SweepMode::edof};
    std::vector<arma::uword> m_list{1, 16, 32, 64};
    std::uint64_t seed = 1;          // user placement and random restarts
    double user_circle_radius_m = 5.0;
    bool users_explicit = false;     // positions fixed by the config file
    arma::uword realizations = 1;    // user placements averaged in the sweep
    arma::uword threads = 0;         // 0 = one per hardware thread
    arma::uword restarts = 1;        // random restarts on top of the start family

    void validate() const; // throws std::invalid_argument naming the field
};

// Converts a power level in dBm to linear watts.
double dbm_to_watt(double dbm);

// Parses an INI-style scenario/sweep description. An empty path or an empty
// file yields the built-in defaults. Sections are [scenario] and [sweep];
// powers take a "dBm" or "W" suffix (bare numbers mean dBm); vectors are
// three numbers. Unknown keys and inconsistent values raise
// std::invalid_argument naming the offending field. Positions of users
// beyond the first default to a seeded circle around user 1 (see
// place_users_on_circle); explicit user<k> keys switch that off.
std::pair<ScenarioConfig, SweepSpec> parse_config(const std::string &path);

// Places users 2..K uniformly at random (seeded) on a circle of the given
// radius around user 1, in user 1's horizontal plane. User 1 stays fixed.
void place_users_on_circle(ScenarioConfig &config, double radius_m, std::uint64_t seed);

// Grid of surface-center distances the sweep visits.
std::vector<double> placement_grid(const SweepSpec &spec);

// Parsing helpers shared by the CLI.
SweepMode parse_mode(const std::string &name);
std::string mode_name(SweepMode mode);

} // namespace xlirs

#endif
