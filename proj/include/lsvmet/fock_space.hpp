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

#ifndef LSVMET_FOCK_SPACE_HPP
#define LSVMET_FOCK_SPACE_HPP

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace lsvmet::fock_space {

using complex = std::complex<double>;

// Occupation triple (n_plus, n_zero, n_minus) of the three Zeeman modes
// m = +1, 0, -1 of a spin-1 particle.
using Triple = std::array<int, 3>;

// The bosonic symmetric subspace of N spin-1 particles, spanned by the
// occupation triples with n_plus + n_zero + n_minus = N.
//
// Ordering is lexicographic by (n_plus, n_zero), descending, and is fixed:
//   (N,0,0), (N-1,1,0), (N-1,0,1), (N-2,2,0), (N-2,1,1), (N-2,0,2), ...
// The position of (a, b, N-a-b) is (N-a)(N-a+1)/2 + (N-a-b), which index()
// evaluates in closed form. Dimension is (N+1)(N+2)/2.
class FockBasis {
 public:
  explicit FockBasis(int n);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(states_.size()); }
  const std::vector<Triple>& states() const { return states_; }
  const Triple& state(int i) const { return states_[i]; }

  // Inverse of the state list. Throws std::invalid_argument for a triple
  // with a negative entry or the wrong particle count.
  int index(const Triple& t) const;

 private:
  int n_;
  std::vector<Triple> states_;
};

std::shared_ptr<const FockBasis> enumerate_basis(int n);

// Normalized amplitude vector over a shared FockBasis.
struct StateVector {
  std::shared_ptr<const FockBasis> basis;
  std::vector<complex> amp;

  double norm() const;
};

// Collective operators on the symmetric subspace. Jx, Jy, Jz are the
// components of the total spin; H = sum_i (j_z^(i))^2 is the quadratic
// generator, diagonal with entry n_plus + n_minus; Hy = sum_i (j_y^(i))^2
// is the same generator conjugated by a pi/2 pulse about x; Parity0 is
// (-1)^(n_zero).
enum class OperatorKind { jx, jy, jz, h, hy, parity0 };

// Hermitian operator in sparse coordinate form over a shared FockBasis.
class CollectiveOperator {
 public:
  struct Entry {
    int row;
    int col;
    complex value;
  };

  CollectiveOperator(std::shared_ptr<const FockBasis> basis,
                     std::vector<Entry> entries, bool hermitian);

  const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool hermitian() const { return hermitian_; }
  bool diagonal() const { return diagonal_; }

  // y = A x over the basis dimension.
  void apply(const std::vector<complex>& x, std::vector<complex>& y) const;
  StateVector apply(const StateVector& s) const;

  // Upper bound on the spectral radius (max row sum of absolute values).
  double gershgorin_bound() const;

 private:
  std::shared_ptr<const FockBasis> basis_;
  std::vector<Entry> entries_;
  bool hermitian_;
  bool diagonal_;
};

CollectiveOperator build_operator(const std::shared_ptr<const FockBasis>& basis,
                                  OperatorKind kind);

// <state|op|state> for Hermitian op; the imaginary residue must stay below
// 1e-10 (relative to the real part above magnitude 1) and is discarded.
double expectation(const StateVector& state, const CollectiveOperator& op);

// Multiplies the amplitude at (n_plus, n_zero, n_minus) by
// exp(-i*theta*(n_plus + n_minus)), i.e. the free evolution exp(-i*theta*H)
// with theta the dimensionless phase kappa*t.
StateVector apply_diagonal_phase(const StateVector& state, double theta);

enum class Axis { x, y, z };

// exp(-i*angle*J_axis)|state> with truncation error below tol in 2-norm.
// Sign convention: exp(-i*theta*J) throughout, so a pi/2 pulse about x maps
// <Jz> after to <Jy> before.
StateVector apply_rotation(const StateVector& state, Axis axis, double angle,
                           double tol = 1e-12);

// exp(-i*theta*G)|state> for a generic Hermitian generator, with the
// spectral interval taken from the Gershgorin bound. Diagonal generators
// are applied by exact elementwise phases.
StateVector evolve(const StateVector& state, const CollectiveOperator& generator,
                   double theta, double tol = 1e-12);

namespace detail {

// y = exp(-i*theta*A) x for real-symmetric A with spectrum inside
// [-radius, radius], via a Chebyshev expansion with Bessel-function
// coefficients truncated so the coefficient tail is below tol. matvec(x, y)
// must compute y = A x. Throws std::runtime_error on non-convergence.
std::vector<complex> chebyshev_exp_apply(
    const std::function<void(const std::vector<complex>&,
                             std::vector<complex>&)>& matvec,
    const std::vector<complex>& x, double theta, double radius, double tol);

}  // namespace detail

}  // namespace lsvmet::fock_space

#endif  // LSVMET_FOCK_SPACE_HPP
