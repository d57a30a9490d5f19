// Copyright 2026 The lsvmet Authors
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

#ifndef LSVMET_ANALYSIS_HPP
#define LSVMET_ANALYSIS_HPP

#include <utility>
#include <vector>

#include "lsvmet/metrology.hpp"

namespace lsvmet::analysis {

struct PowerLawFit {
  double a = 0.0;      // prefactor of y = a * N^gamma
  double gamma = 0.0;  // exponent
  double r2 = 0.0;     // coefficient of determination in log-log space
  double n_min = 0.0;
  double n_max = 0.0;
};

// Ordinary least squares on (log N, log y). Requires at least 3 points,
// distinct N, and y > 0 throughout.
PowerLawFit power_law_fit(const std::vector<std::pair<double, double>>& points);

// 10*log10(F_Q/N): the dB improvement over the standard quantum limit,
// which maps to 0 dB by construction.
double improvement_db(double fq, long long n);

struct QcrbRow {
  long long n = 0;
  double dk_sql = 0.0;
  double dk_hl = 0.0;
  double dk_dicke = 0.0;
  double improvement_db = 0.0;
};

// Strictly increasing even-N grid: `points` log-spaced values in
// [n_min, n_max], each rounded to the nearest even integer (half away from
// zero) and clamped to >= 2. A value that collides with its predecessor is
// bumped to the next even integer while headroom below the (rounded) top of
// the range remains, so the grid keeps its full length whenever the range
// can hold it; out of headroom, duplicates are dropped instead.
std::vector<long long> even_log_grid(long long n_min, long long n_max,
                                     int points);

// QCRB table over an even log-spaced N grid: per row delta_kappa for the
// SQL (F_Q = N), the spin-1 Heisenberg limit (F_Q = N^2), and the balanced
// Dicke probe in the requested frame, plus the Dicke dB improvement. The
// default frame is free_phase, the bound on estimating kappa from the bare
// phase accumulation the curve tabulates (N=2 row: 3/(4 sqrt 2)); the
// ramsey frame reproduces the ~N^1.9 scan instead. The three-curve
// ordering dk_hl <= dk_dicke <= dk_sql holds in both frames for every
// even N in [2, 10^4].
std::vector<QcrbRow> qcrb_curve(
    long long n_min, long long n_max, int points,
    const metrology::EstimationContext& ctx,
    metrology::DickeFrame frame = metrology::DickeFrame::free_phase);

// Diagonal matrix element of the rank-2 tensor T_0^(2) from the
// Wigner-Eckart theorem:
//   [-j(j+1) + 3 m^2] * reduced / sqrt((2j+3)(j+1)(2j+1) j (2j-1)).
// Undefined for j = 0 and j = 1/2 (singular denominator).
double wigner_eckart_diag(double j, double m, double reduced = 1.0);

struct SensitivityInput {
  double delta_kappa_over_2pi = 0.0;  // Hz
  double energy_ratio = 0.0;          // Delta E / (h C_0^(2)), Hz
  double jz2_fluct = 0.0;             // Delta(j_z^2), dimensionless
};

// C_0^(2) bound = (delta_kappa/2pi) * Delta(j_z^2) / [Delta E/(h C_0^(2))].
double kappa_to_c02(const SensitivityInput& inp);

}  // namespace lsvmet::analysis

#endif  // LSVMET_ANALYSIS_HPP
