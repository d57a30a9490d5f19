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

#ifndef LSVMET_STATES_HPP
#define LSVMET_STATES_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lsvmet/fock_space.hpp"

namespace lsvmet::states {

using fock_space::complex;
using fock_space::StateVector;
using fock_space::Triple;

// Two-branch superposition of exact eigenstates of the quadratic generator
// H = sum_i (j_z^(i))^2. Eigenvalues are stored, never recomputed, so the
// representation works for any particle count and single-particle spin.
// For spin-1 cats whose branches are single Fock states the triples are
// recorded so the cat can be expanded to a full StateVector.
struct CatState {
  double lambda_a = 0.0;
  std::string label_a;
  double lambda_b = 0.0;
  std::string label_b;
  complex w_a{0.0, 0.0};
  complex w_b{0.0, 0.0};
  int n = 0;
  double j = 1.0;
  std::optional<Triple> triple_a;
  std::optional<Triple> triple_b;
};

// Probabilities p_k, k = 0..N/2, of the components |k, N-2k, k> of the
// balanced spin-1 Dicke state. Exact 64-bit integer combinatorics for
// N <= 20; log-gamma evaluation with log-sum-exp normalization above.
// Throws std::invalid_argument for odd or non-positive N.
std::vector<double> dicke_probabilities(int n);

// Balanced zero-magnetization Dicke state of N spin-1 particles as a full
// StateVector: amplitude sqrt(p_k) on (k, N-2k, k), zero elsewhere.
StateVector dicke_balanced(int n);

// (|all m=+1> + |all m=0>)/sqrt(2): branches with H eigenvalues N and 0.
CatState noon_state(int n);
StateVector noon_vector(int n);

// (|N/2, 0, N/2> + |0, N, 0>)/sqrt(2): twin-Fock branch (eigenvalue N)
// against the all-m=0 branch (eigenvalue 0). N even.
CatState twin_fock_superposition(int n);
StateVector twin_fock_vector(int n);

// N/2 ion pairs, each (|m,-m> + |-m,m>)/sqrt(2), superposed between
// m = m_hi and m = m_lo: branch eigenvalues N*m_hi^2 and N*m_lo^2.
// Defaults are the j = 7/2 stretched/inner pair.
CatState paired_dfs_cat(int n, double j = 3.5, double m_hi = 3.5,
                        double m_lo = 0.5);

// Single-ion superposition (|m_hi> + |m_lo>)/sqrt(2) with eigenvalues
// m_hi^2 and m_lo^2.
CatState single_ion_cat(double j = 3.5, double m_hi = 3.5, double m_lo = 0.5);

// Symmetric product state with the given normalized single-particle
// amplitudes (a_plus, a_zero, a_minus): the amplitude on (n1, n2, n3) is
// sqrt(N!/(n1! n2! n3!)) a_plus^n1 a_zero^n2 a_minus^n3.
StateVector product_state(int n, const std::array<complex, 3>& single_amps);

// Expands a spin-1 cat with recorded branch triples to a StateVector.
StateVector expand_cat(const CatState& cat);

}  // namespace lsvmet::states

#endif  // LSVMET_STATES_HPP
