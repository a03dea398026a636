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

#ifndef xlirs_sweep_H
#define xlirs_sweep_H

#include "xlirs/config_io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace xlirs
{

// One grid point of the placement study. Rates are bit/s/Hz; fields of modes
// that did not run stay NaN and serialize as empty cells.
struct SweepRecord
{
    double x_i_m = 0.0;        // surface-center distance from the BS
    arma::uword m_antennas = 0;
    double rate_ao = arma::datum::nan;      // alternating optimization, user 1
    double rate_bound = arma::datum::nan;   // log2(1 + SNR upper bound)
    double rate_approx = arma::datum::nan;  // log2(1 + rank-one SNR)
    double rate_closed = arma::datum::nan;  // log2(1 + aligned closed form)
    double sum_rate_k = arma::datum::nan;   // surrogate ascent, all users
    double edof_value = arma::datum::nan;
    arma::uword iterations = 0; // AO iterations plus accepted outer iterations
    double sum_rate_k_mean = arma::datum::nan; // only with realizations > 1
    double wall_time_ms = 0.0;  // never serialized: output must be reproducible
    std::string error;          // empty on success
};

// Runs every requested mode at every (placement, antenna-count) grid point,
// in parallel. A failing point records its reason and leaves the other
// points untouched. Output order is fixed: placements outer, antenna counts
// inner, regardless of thread timing.
std::vector<SweepRecord> run_sweep(const ScenarioConfig &scenario, const SweepSpec &spec);

// CSV with a fixed header and 9-significant-digit floats; equal record
// vectors serialize to identical bytes.
void emit_csv(const std::vector<SweepRecord> &records, std::ostream &out);
void emit_csv(const std::vector<SweepRecord> &records, const std::string &path);

} // namespace xlirs

#endif
