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

#ifndef LSVMET_METROLOGY_HPP
#define LSVMET_METROLOGY_HPP

#include <optional>

#include "lsvmet/fock_space.hpp"
#include "lsvmet/states.hpp"

namespace lsvmet::metrology {

// Probe duration T (seconds), trial count nu, particle count, and
// single-particle spin j. Canonical figure outputs use T = 1, nu = 1.
struct EstimationContext {
  double T = 1.0;
  long long nu = 1;
  int n = 0;
  double j = 1.0;
};

enum class Protocol { qcrb, parity, moment };

struct PrecisionResult {
  int n = 0;
  Protocol protocol = Protocol::qcrb;
  // F_Q for the QCRB; the classical information figure slope^2/variance for
  // error-propagation protocols. delta_kappa = 1/(T sqrt(nu) sqrt(fisher)).
  double fisher = 0.0;
  double delta_kappa = 0.0;  // rad/s
  std::optional<double> kt;  // operating point, when applicable
  double T = 1.0;
  long long nu = 1;
  bool unbounded = false;
};

// Pure-state quantum Fisher information 4(<G^2> - <G>^2), clamped to zero
// when the variance is within -1e-10 of zero.
double qfi_pure(const states::StateVector& state,
                const fock_space::CollectiveOperator& generator);

// QFI of a two-branch cat: 4 |w_a|^2 |w_b|^2 (lambda_a - lambda_b)^2, which
// is the squared eigenvalue gap for equal weights.
double qfi_cat(const states::CatState& cat);

// Quantum Cramer-Rao bound delta_kappa = 1/(sqrt(nu) T sqrt(F_Q)).
double qcrb(double fq, const EstimationContext& ctx);

// Heisenberg-limit bound 1/(sqrt(nu) T N |lambda_max - lambda_min|) with
// lambda the extremes of m^2 over m = -j..j. Degenerate for spin-1/2.
double hl_bound(const EstimationContext& ctx);

// Frame of the Dicke-probe QFI. `ramsey` scores the probe through the full
// Ramsey sequence (generator sum_i (j_y^(i))^2, the frame behind the
// published ~N^1.9 scaling); `free_phase` is the bare variance 4 Var(H) of
// the diagonal phase generator, which grows only as N + 1/2.
enum class DickeFrame { ramsey, free_phase };

// O(N) QFI of the balanced Dicke state from the p_k distribution alone.
// H has eigenvalue 2k on the Dicke support |k, N-2k, k>, so with Var taken
// over p_k:
//   free_phase:  4 Var(2k)
//   ramsey:      Var(2k) + 2 sum_k p_k k(k+1)
double qfi_dicke_fast(long long n, DickeFrame frame = DickeFrame::ramsey);

}  // namespace lsvmet::metrology

#endif  // LSVMET_METROLOGY_HPP
