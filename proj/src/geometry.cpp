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

#include "xlirs/geometry.hpp"

#include <stdexcept>
#include <string>

namespace xlirs
{

void ScenarioConfig::validate() const
{
    if (!(wavelength_m > 0.0))
        throw std::invalid_argument("scenario.wavelength: must be positive");
    if (bs_antennas < 1)
        throw std::invalid_argument("scenario.bs_antennas: must be at least 1");
    if (irs_horizontal < 1)
        throw std::invalid_argument("scenario.irs_horizontal: must be at least 1");
    if (irs_vertical < 1)
        throw std::invalid_argument("scenario.irs_vertical: must be at least 1");
    if (users < 1)
        throw std::invalid_argument("scenario.users: must be at least 1");
    if (!(tx_power_w > 0.0))
        throw std::invalid_argument("scenario.tx_power: must be positive");
    if (noise_powers_w.size() != users)
        throw std::invalid_argument("scenario.noise_power: need one value per user, got " +
                                    std::to_string(noise_powers_w.size()) + " for " +
                                    std::to_string(users) + " users");
    for (double s2 : noise_powers_w)
        if (!(s2 > 0.0))
            throw std::invalid_argument("scenario.noise_power: must be positive");
    if (user_positions.size() != users)
        throw std::invalid_argument("scenario.user_positions: need one position per user, got " +
                                    std::to_string(user_positions.size()) + " for " +
                                    std::to_string(users) + " users");
    if (!(element_spacing_m > 0.0))
        throw std::invalid_argument("scenario.element_spacing: must be positive");
}

ArrayLayout build_layout(const ScenarioConfig &config)
{
    config.validate();

    const double d = config.element_spacing_m;
    const arma::uword M = config.bs_antennas;
    const arma::uword Nx = config.irs_horizontal;
    const arma::uword Ny = config.irs_vertical;

    ArrayLayout layout;
    layout.bs_center = config.bs_center;
    layout.irs_center = config.irs_center;

    layout.bs_offsets.zeros(3, M);
    const double bs_mid = 0.5 * double(M + 1); // 1-based center index
    for (arma::uword m = 0; m < M; m++)
        layout.bs_offsets(0, m) = (double(m + 1) - bs_mid) * d;

    layout.irs_offsets.zeros(3, Nx * Ny);
    const double ix_mid = 0.5 * double(Nx + 1);
    const double iz_mid = 0.5 * double(Ny + 1);
    for (arma::uword nz = 0; nz < Ny; nz++)
        for (arma::uword nx = 0; nx < Nx; nx++)
        {
            const arma::uword n = nz * Nx + nx; // vertical-major flat index
            layout.irs_offsets(0, n) = (double(nx + 1) - ix_mid) * d;
            layout.irs_offsets(2, n) = (double(nz + 1) - iz_mid) * d;
        }

    layout.user_positions.zeros(3, config.users);
    for (arma::uword k = 0; k < config.users; k++)
        layout.user_positions.col(k) = config.user_positions[k];

    layout.d_bi = arma::norm(arma::vec(config.irs_center - config.bs_center));
    layout.d_ik.zeros(config.users);
    for (arma::uword k = 0; k < config.users; k++)
        layout.d_ik(k) = arma::norm(arma::vec(config.user_positions[k] - config.irs_center));

    return layout;
}

ApertureReport aperture_report(const ScenarioConfig &config)
{
    config.validate();

    const double d = config.element_spacing_m;
    const double span_x = double(config.irs_horizontal - 1);
    const double span_z = double(config.irs_vertical - 1);

    ApertureReport report;
    report.irs_aperture_m = d * std::sqrt(span_x * span_x + span_z * span_z);
    report.bs_aperture_m = double(config.bs_antennas - 1) * d;

    const double DR = report.irs_aperture_m, DB = report.bs_aperture_m;
    report.rayleigh_bs_sum_m = 2.0 * (DR + DB) * (DR + DB) / config.wavelength_m;
    report.rayleigh_bs_sumsq_m = 2.0 * (DR * DR + DB * DB) / config.wavelength_m;
    report.rayleigh_user_m = 2.0 * DR * DR / config.wavelength_m;
    return report;
}

double element_distance(const arma::vec3 &center_a, const arma::vec3 &offset_a,
                        const arma::vec3 &center_b, const arma::vec3 &offset_b)
{
    const double dx = (center_a[0] - center_b[0]) + (offset_a[0] - offset_b[0]);
    const double dy = (center_a[1] - center_b[1]) + (offset_a[1] - offset_b[1]);
    const double dz = (center_a[2] - center_b[2]) + (offset_a[2] - offset_b[2]);
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

} // namespace xlirs
