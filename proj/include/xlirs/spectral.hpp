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

#ifndef xlirs_spectral_H
#define xlirs_spectral_H

#include <armadillo>
#include <optional>

namespace xlirs
{

// Eigenstructure of the phase-only Gram matrix of a BS-to-surface channel,
// plus the derived quantities the placement study reads off it.
struct SpectralSummary
{
    arma::vec eigenvalues;     // descending, clamped at zero, length N
    arma::cx_mat eigenvectors; // N x N, column i pairs with eigenvalues(i)
    arma::uword numerical_rank = 0; // eigenvalues above 1e-10 of the largest
    arma::uword retained = 0;  // leading pairs with a correlation ratio (same cutoff)
    arma::vec kappas;          // correlation ratio per retained pair
    double edof = 0.0;         // effective degrees of freedom of the Gram
};

// Signal-to-noise predictions of the closed-form study, all in linear scale
// and already multiplied by the transmit power.
struct SnrEstimates
{
    double upper_bound = 0.0;  // P beta M N^2 / (d_BI^2 d_I1^2 sigma^2)
    double rank_one = 0.0;     // P beta N mu_1 / (...), exact when rank is 1
    double aligned = 0.0;      // P beta N max_i kappa_i mu_i / (...), realizable
    std::optional<double> single_antenna; // P beta N^2 / (...), only when M = 1
    double path_factor = 0.0;  // beta / (d_BI^2 d_I1^2), for reference
};

// Eigendecomposition of gram = G_phase G_phase^H with every derived field of
// the summary filled in. Eigenvalues come back descending; negatives from
// roundoff are clamped to zero.
SpectralSummary gram_eigen(const arma::cx_mat &G_phase);

// Ratio between the reflect-side power of the unit-modulus alignment of psi
// and N times the power of psi itself: (theta^H gram theta) / (N psi^H gram
// psi) with theta_n = exp(j arg(psi_n)). Entries of psi below 1e-14 in
// magnitude take phase zero.
double correlation_ratio(const arma::cx_vec &psi, const arma::cx_mat &gram);

// Unit-modulus phase alignment of psi used by the correlation ratio.
arma::cx_vec phase_alignment(const arma::cx_vec &psi);

// Closed-form receive-SNR predictions for user 1 at distance d_i1 from the
// surface, including the transmit power.
SnrEstimates snr_closed_forms(const SpectralSummary &summary, double d_bi, double d_i1,
                              double noise_power_w, double tx_power_w, double wavelength_m,
                              arma::uword bs_antennas, arma::uword irs_elements);

// Index (0-based, into the retained pairs) maximizing kappa_i mu_i, the pair
// the aligned closed form selects.
arma::uword best_index(const SpectralSummary &summary);

// Effective degrees of freedom (trace(gram) / ||gram||_F)^2.
double edof(const arma::cx_mat &gram);

} // namespace xlirs

#endif
