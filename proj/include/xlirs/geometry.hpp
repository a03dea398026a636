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

#ifndef xlirs_geometry_H
#define xlirs_geometry_H

#include <armadillo>
#include <vector>

namespace xlirs
{

// Physical description of one deployment: a base-station ULA, a reflecting
// UPA and K single-antenna users. Lengths in meters, powers in linear watts.
struct ScenarioConfig
{
    double wavelength_m = 0.03;   // carrier wavelength
    arma::uword bs_antennas = 64; // M, ULA size
    arma::uword irs_horizontal = 120; // N_x, surface columns
    arma::uword irs_vertical = 4;     // N_y, surface rows
    arma::uword users = 2;            // K
    double tx_power_w = 1.0;          // total transmit budget P
    std::vector<double> noise_powers_w{1.0e-12, 1.0e-12}; // per-user sigma_k^2
    arma::vec3 bs_center{0.0, 0.0, 0.0};
    arma::vec3 irs_center{0.0, 50.0, 0.0};
    std::vector<arma::vec3> user_positions{{0.0, 150.0, 0.0}, {0.0, 155.0, 0.0}};
    double element_spacing_m = 0.015; // d, defaults to half a wavelength

    arma::uword irs_elements() const { return irs_horizontal * irs_vertical; } // N

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// Element positions realized from a ScenarioConfig. Positions are stored as
// center + per-element offset so that translating a whole scenario leaves
// every pairwise distance bit-identical.
struct ArrayLayout
{
    arma::vec3 bs_center{0.0, 0.0, 0.0};
    arma::vec3 irs_center{0.0, 0.0, 0.0};
    arma::mat bs_offsets;     // 3 x M, element position = bs_center + column
    arma::mat irs_offsets;    // 3 x N, element position = irs_center + column
    arma::mat user_positions; // 3 x K, absolute
    double d_bi = 0.0;        // center-to-center distance BS <-> surface
    arma::vec d_ik;           // center-to-center distance surface <-> user k

    arma::mat bs_positions() const { return bs_offsets.each_col() + bs_center; }
    arma::mat irs_positions() const { return irs_offsets.each_col() + irs_center; }
};

// Aperture diagonals and the near-field boundary distances they imply.
struct ApertureReport
{
    double irs_aperture_m = 0.0;       // D_R, surface diagonal
    double bs_aperture_m = 0.0;        // D_B = (M - 1) d
    double rayleigh_bs_sum_m = 0.0;    // 2 (D_R + D_B)^2 / lambda
    double rayleigh_bs_sumsq_m = 0.0;  // 2 (D_R^2 + D_B^2) / lambda
    double rayleigh_user_m = 0.0;      // 2 D_R^2 / lambda
};

// Realizes element positions. BS antennas sit on the first axis around
// bs_center with spacing d; surface elements form an N_x by N_y grid in the
// first/third axis plane around irs_center, column-major in the vertical
// index: element n = nz * N_x + nx (0-based).
ArrayLayout build_layout(const ScenarioConfig &config);

// Aperture sizes and Rayleigh distances for a configuration. Both
// BS-side boundary conventions are reported side by side.
ApertureReport aperture_report(const ScenarioConfig &config);

// Exact Euclidean distance between (center_a + offset_a) and
// (center_b + offset_b), evaluated as || (center_a - center_b) + (offset_a -
// offset_b) || so common translations cancel exactly.
double element_distance(const arma::vec3 &center_a, const arma::vec3 &offset_a,
                        const arma::vec3 &center_b, const arma::vec3 &offset_b);

} // namespace xlirs

#endif
