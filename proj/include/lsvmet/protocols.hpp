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

#ifndef LSVMET_PROTOCOLS_HPP
#define LSVMET_PROTOCOLS_HPP

#include <optional>
#include <vector>

#include "lsvmet/fock_space.hpp"
#include "lsvmet/metrology.hpp"

namespace lsvmet::protocols {

using metrology::EstimationContext;
using metrology::PrecisionResult;

// NOON-state parity interferometer: phase accumulation exp(-i*kt*n_plus)
// followed by a pi/2 pulse between the m = +1 and m = 0 modes, then the
// expectation of (-1)^(n_zero). Simulated in the two-mode (m = +1, m = 0)
// subspace of dimension N+1 (the m = -1 mode stays empty throughout).
double parity_signal(int n, double kt, double tol = 1e-12);

// (-1)^(N/2) cos(N*kt). Throws std::invalid_argument for odd N, where the
// prefactor is undefined (the simulation path still applies).
double parity_closed_form(int n, double kt);

// Error-propagation precision of the parity readout,
// delta_kappa = Delta P / (T sqrt(nu) |d<P>/d(kt)|), evaluated in closed
// form: both Delta P and the slope carry |sin(N*kt)|, so the result is
// 1/(T sqrt(nu) N) at every kt with sin(N*kt) != 0. Throws
// std::invalid_argument where the slope vanishes.
PrecisionResult parity_precision(int n, double kt, const EstimationContext& ctx);

struct ParityScanRow {
  double kt = 0.0;
  double sim = 0.0;
  std::optional<double> closed_form;  // even N only
  std::optional<double> abs_diff;
};

struct ParityScan {
  int n = 0;
  std::vector<ParityScanRow> rows;
};

// Inclusive linear grid: kt_min + i*(kt_max - kt_min)/(points - 1); a
// single point lands on kt_min.
ParityScan parity_scan(int n, double kt_min, double kt_max, int points);

// kt scan grid for the moment protocol, left-open so the zero-slope
// symmetric point kt = 0 is excluded: point i (0-based) sits at
// kt_min + (i+1)*(kt_max - kt_min)/points; a single point lands on kt_max.
struct ScanGrid {
  double kt_min = 0.0;
  double kt_max = 1.5707963267948966;  // pi/2
  int points = 64;
};

struct MomentPoint {
  double kt = 0.0;
  double mean_jx2 = 0.0;
  double var_jx2 = 0.0;
  double slope = 0.0;        // d<Jx^2>/d(kt), central finite difference
  double delta_kappa = 0.0;  // +inf when unbounded
  bool unbounded = false;
};

struct MomentScan {
  int n = 0;
  std::vector<MomentPoint> points;
  MomentPoint optimum;  // grid minimum after golden-section refinement
};

// One operating point of the Jx^2 moment protocol: the probe evolves under
// the diagonal phase exp(-i*kt*H) and Jx^2 is measured directly (no pulse
// needed; it equals Jz^2 after a pi/2 rotation). The slope is a central
// finite difference with step 1e-5*max(1, kt), cross-checked against the
// commutator identity d<A>/d(kt) = i<[H, A]> within 1e-6 relative; slopes
// below 1e-8 in magnitude are reported unbounded.
MomentPoint moment_point(const fock_space::StateVector& probe, double kt,
                         const EstimationContext& ctx);

PrecisionResult moment_precision(const fock_space::StateVector& probe,
                                 double kt, const EstimationContext& ctx);

// Full grid scan plus one golden-section refinement pass around the grid
// minimum. Throws std::runtime_error when every grid point is unbounded.
MomentScan moment_scan(const fock_space::StateVector& probe,
                       const EstimationContext& ctx, const ScanGrid& grid = {});

// moment_scan of the balanced Dicke probe, reduced to its optimum.
PrecisionResult optimal_moment_precision(int n, const EstimationContext& ctx,
                                         const ScanGrid& grid = {});

}  // namespace lsvmet::protocols

#endif  // LSVMET_PROTOCOLS_HPP
