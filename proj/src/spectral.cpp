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

#include "xlirs/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace xlirs
{

static constexpr double rank_cutoff = 1.0e-10;  // relative to the largest eigenvalue
static constexpr double phase_floor = 1.0e-14;  // magnitudes below take phase zero

arma::cx_vec phase_alignment(const arma::cx_vec &psi)
{
    arma::cx_vec theta(psi.n_elem);
    for (arma::uword n = 0; n < psi.n_elem; n++)
        theta(n) = std::abs(psi(n)) < phase_floor
                       ? arma::cx_double(1.0, 0.0)
                       : std::polar(1.0, std::arg(psi(n)));
    return theta;
}

double correlation_ratio(const arma::cx_vec &psi, const arma::cx_mat &gram)
{
    if (psi.n_elem != gram.n_rows || gram.n_rows != gram.n_cols)
        throw std::invalid_argument("spectral: dimension mismatch in correlation ratio");

    const arma::cx_vec theta = phase_alignment(psi);
    const double aligned = std::real(arma::cx_double(arma::cdot(theta, gram * theta)));
    const double natural = std::real(arma::cx_double(arma::cdot(psi, gram * psi)));
    if (!(natural > 0.0))
        throw std::invalid_argument("spectral: correlation ratio needs psi with positive Gram power");
    return aligned / (double(psi.n_elem) * natural);
}

SpectralSummary gram_eigen(const arma::cx_mat &G_phase)
{
    const arma::uword N = G_phase.n_rows;
    const arma::cx_mat gram = G_phase * G_phase.t();

    arma::vec values;
    arma::cx_mat vectors;
    if (!arma::eig_sym(values, vectors, gram))
        throw std::runtime_error("spectral: eigendecomposition failed");

    SpectralSummary s;
    s.eigenvalues.zeros(N);
    s.eigenvectors.set_size(N, N);
    for (arma::uword i = 0; i < N; i++) // descending order, clamp roundoff negatives
    {
        const arma::uword j = N - 1 - i;
        s.eigenvalues(i) = values(j) > 0.0 ? values(j) : 0.0;
        s.eigenvectors.col(i) = vectors.col(j);
    }

    const double cutoff = rank_cutoff * s.eigenvalues(0);
    arma::uword rank = 0;
    while (rank < N && s.eigenvalues(rank) > cutoff)
        rank++;
    s.numerical_rank = rank;
    s.retained = rank;

    s.kappas.zeros(s.retained);
    for (arma::uword i = 0; i < s.retained; i++)
        s.kappas(i) = correlation_ratio(s.eigenvectors.col(i), gram);

    s.edof = edof(gram);
    return s;
}

SnrEstimates snr_closed_forms(const SpectralSummary &summary, double d_bi, double d_i1,
                              double noise_power_w, double tx_power_w, double wavelength_m,
                              arma::uword bs_antennas, arma::uword irs_elements)
{
    if (!(d_bi > 0.0 && d_i1 > 0.0 && noise_power_w > 0.0 && tx_power_w > 0.0))
        throw std::invalid_argument("spectral: distances and powers must be positive");

    const double amp = wavelength_m / (4.0 * arma::datum::pi);
    const double beta = amp * amp * amp * amp; // two-hop amplitude^2
    const double N = double(irs_elements);

    SnrEstimates est;
    est.path_factor = beta / (d_bi * d_bi * d_i1 * d_i1);
    const double scale = tx_power_w * est.path_factor / noise_power_w;

    est.upper_bound = scale * double(bs_antennas) * N * N;
    est.rank_one = scale * N * summary.eigenvalues(0);

    double best = 0.0;
    for (arma::uword i = 0; i < summary.retained; i++)
        best = std::max(best, summary.kappas(i) * summary.eigenvalues(i));
    est.aligned = scale * N * best;

    if (bs_antennas == 1)
        est.single_antenna = scale * N * N;
    return est;
}

arma::uword best_index(const SpectralSummary &summary)
{
    if (summary.retained == 0)
        throw std::invalid_argument("spectral: no retained eigenpairs");
    arma::uword best = 0;
    for (arma::uword i = 1; i < summary.retained; i++)
        if (summary.kappas(i) * summary.eigenvalues(i) >
            summary.kappas(best) * summary.eigenvalues(best))
            best = i;
    return best;
}

double edof(const arma::cx_mat &gram)
{
    const double tr = std::real(arma::cx_double(arma::trace(gram)));
    const double fro = arma::norm(gram, "fro");
    if (!(fro > 0.0))
        throw std::invalid_argument("spectral: zero Gram matrix");
    return (tr / fro) * (tr / fro);
}

} // namespace xlirs
