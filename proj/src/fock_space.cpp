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

#include "lsvmet/fock_space.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <stdexcept>

namespace lsvmet::fock_space {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

FockBasis::FockBasis(int n) : n_(n) {
  if (n < 0) {
    throw std::invalid_argument("FockBasis: particle count must be non-negative");
  }
  states_.reserve(static_cast<size_t>(n + 1) * (n + 2) / 2);
  for (int a = n; a >= 0; --a) {
    for (int b = n - a; b >= 0; --b) {
      states_.push_back({a, b, n - a - b});
    }
  }
}

int FockBasis::index(const Triple& t) const {
  if (t[0] < 0 || t[1] < 0 || t[2] < 0 || t[0] + t[1] + t[2] != n_) {
    throw std::invalid_argument("FockBasis::index: triple outside the basis");
  }
  const int r = n_ - t[0];
  return r * (r + 1) / 2 + (r - t[1]);
}

std::shared_ptr<const FockBasis> enumerate_basis(int n) {
  return std::make_shared<const FockBasis>(n);
}

double StateVector::norm() const {
  double s = 0.0;
  for (const complex& z : amp) s += std::norm(z);
  return std::sqrt(s);
}

CollectiveOperator::CollectiveOperator(std::shared_ptr<const FockBasis> basis,
                                       std::vector<Entry> entries,
                                       bool hermitian)
    : basis_(std::move(basis)),
      entries_(std::move(entries)),
      hermitian_(hermitian) {
  diagonal_ = true;
  for (const Entry& e : entries_) {
    if (e.row != e.col) {
      diagonal_ = false;
      break;
    }
  }
}

void CollectiveOperator::apply(const std::vector<complex>& x,
                               std::vector<complex>& y) const {
  const size_t dim = static_cast<size_t>(basis_->dim());
  if (x.size() != dim) {
    throw std::invalid_argument("CollectiveOperator::apply: dimension mismatch");
  }
  y.assign(dim, complex{0.0, 0.0});
  for (const Entry& e : entries_) {
    y[static_cast<size_t>(e.row)] += e.value * x[static_cast<size_t>(e.col)];
  }
}

StateVector CollectiveOperator::apply(const StateVector& s) const {
  StateVector out;
  out.basis = s.basis;
  apply(s.amp, out.amp);
  return out;
}

double CollectiveOperator::gershgorin_bound() const {
  std::vector<double> row_sum(static_cast<size_t>(basis_->dim()), 0.0);
  for (const Entry& e : entries_) {
    row_sum[static_cast<size_t>(e.row)] += std::abs(e.value);
  }
  double r = 0.0;
  for (double v : row_sum) r = std::max(r, v);
  return r;
}

CollectiveOperator build_operator(const std::shared_ptr<const FockBasis>& basis,
                                  OperatorKind kind) {
  if (!basis) {
    throw std::invalid_argument("build_operator: null basis");
  }
  std::vector<CollectiveOperator::Entry> ent;

  auto diag = [&](auto&& f) {
    ent.reserve(static_cast<size_t>(basis->dim()));
    for (int i = 0; i < basis->dim(); ++i) {
      ent.push_back({i, i, complex{f(basis->state(i)), 0.0}});
    }
  };

  switch (kind) {
    case OperatorKind::jz:
      diag([](const Triple& t) { return static_cast<double>(t[0] - t[2]); });
      break;
    case OperatorKind::h:
      diag([](const Triple& t) { return static_cast<double>(t[0] + t[2]); });
      break;
    case OperatorKind::parity0:
      diag([](const Triple& t) { return (t[1] % 2 == 0) ? 1.0 : -1.0; });
      break;
    case OperatorKind::jx:
    case OperatorKind::jy: {
      // J+ = sqrt(2) (adag_plus a_zero + adag_zero a_minus); the four
      // processes below are the raising/lowering actions on one column.
      const bool is_x = (kind == OperatorKind::jx);
      const complex raise_f =
          is_x ? complex{kInvSqrt2, 0.0} : complex{0.0, -kInvSqrt2};
      const complex lower_f =
          is_x ? complex{kInvSqrt2, 0.0} : complex{0.0, kInvSqrt2};
      for (int c = 0; c < basis->dim(); ++c) {
        const Triple& t = basis->state(c);
        if (t[1] > 0) {  // adag_plus a_zero
          const int r = basis->index({t[0] + 1, t[1] - 1, t[2]});
          ent.push_back({r, c, raise_f * std::sqrt(double(t[0] + 1) * t[1])});
        }
        if (t[2] > 0) {  // adag_zero a_minus
          const int r = basis->index({t[0], t[1] + 1, t[2] - 1});
          ent.push_back({r, c, raise_f * std::sqrt(double(t[1] + 1) * t[2])});
        }
        if (t[0] > 0) {  // adag_zero a_plus
          const int r = basis->index({t[0] - 1, t[1] + 1, t[2]});
          ent.push_back({r, c, lower_f * std::sqrt(double(t[0]) * (t[1] + 1))});
        }
        if (t[1] > 0) {  // adag_minus a_zero
          const int r = basis->index({t[0], t[1] - 1, t[2] + 1});
          ent.push_back({r, c, lower_f * std::sqrt(double(t[1]) * (t[2] + 1))});
        }
      }
      break;
    }
    case OperatorKind::hy: {
      // sum_i (j_y^(i))^2 = (n_plus + 2 n_zero + n_minus)/2
      //                     - (adag_plus a_minus + adag_minus a_plus)/2
      for (int c = 0; c < basis->dim(); ++c) {
        const Triple& t = basis->state(c);
        ent.push_back({c, c, complex{0.5 * (t[0] + 2.0 * t[1] + t[2]), 0.0}});
        if (t[2] > 0) {
          const int r = basis->index({t[0] + 1, t[1], t[2] - 1});
          ent.push_back({r, c, complex{-0.5 * std::sqrt(double(t[0] + 1) * t[2]), 0.0}});
        }
        if (t[0] > 0) {
          const int r = basis->index({t[0] - 1, t[1], t[2] + 1});
          ent.push_back({r, c, complex{-0.5 * std::sqrt(double(t[0]) * (t[2] + 1)), 0.0}});
        }
      }
      break;
    }
  }
  return CollectiveOperator(basis, std::move(ent), /*hermitian=*/true);
}

double expectation(const StateVector& state, const CollectiveOperator& op) {
  if (!op.hermitian()) {
    throw std::invalid_argument("expectation: operator must be Hermitian");
  }
  if (!state.basis || !op.basis() || state.basis->n() != op.basis()->n() ||
      state.amp.size() != static_cast<size_t>(state.basis->dim())) {
    throw std::invalid_argument("expectation: basis mismatch");
  }
  std::vector<complex> y;
  op.apply(state.amp, y);
  complex v{0.0, 0.0};
  for (size_t i = 0; i < y.size(); ++i) v += std::conj(state.amp[i]) * y[i];
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real()))) {
    throw std::runtime_error("expectation: imaginary residue above tolerance");
  }
  return v.real();
}

StateVector apply_diagonal_phase(const StateVector& state, double theta) {
  if (!state.basis || state.amp.size() != static_cast<size_t>(state.basis->dim())) {
    throw std::invalid_argument("apply_diagonal_phase: malformed state");
  }
  StateVector out;
  out.basis = state.basis;
  out.amp.resize(state.amp.size());
  for (size_t i = 0; i < state.amp.size(); ++i) {
    const Triple& t = state.basis->state(static_cast<int>(i));
    out.amp[i] = state.amp[i] * std::polar(1.0, -theta * (t[0] + t[2]));
  }
  return out;
}

namespace detail {

std::vector<complex> chebyshev_exp_apply(
    const std::function<void(const std::vector<complex>&,
                             std::vector<complex>&)>& matvec,
    const std::vector<complex>& x, double theta, double radius, double tol) {
  if (tol <= 0.0) {
    throw std::invalid_argument("chebyshev_exp_apply: tol must be positive");
  }
  if (radius < 0.0) {
    throw std::invalid_argument("chebyshev_exp_apply: negative spectral radius");
  }
  if (theta == 0.0 || radius == 0.0) {
    return x;
  }
  // exp(-i*theta*A) = sum_k (2 - delta_k0) (-i s)^k J_k(a) T_k(A/radius)
  // with s = sign(theta) and a = |theta|*radius. The truncation tail is
  // controlled through |J_k(a)| <= (a/2)^k / k!.
  const double a = std::abs(theta) * radius;
  const complex step{0.0, theta > 0.0 ? -1.0 : 1.0};
  const size_t dim = x.size();
  const double log_a_half = std::log(a / 2.0);

  std::vector<complex> tprev = x;  // T_0 x
  std::vector<complex> tcur(dim), tnext(dim), tmp(dim);
  std::vector<complex> y(dim);
  const double j0 = boost::math::cyl_bessel_j(0, a);
  for (size_t i = 0; i < dim; ++i) y[i] = j0 * x[i];

  matvec(x, tmp);
  for (size_t i = 0; i < dim; ++i) tcur[i] = tmp[i] / radius;
  complex phase = step;
  double jk = boost::math::cyl_bessel_j(1, a);
  for (size_t i = 0; i < dim; ++i) y[i] += 2.0 * jk * phase * tcur[i];

  const long k_cap = static_cast<long>(3.0 * a) + 1000;
  long k = 1;
  while (true) {
    if (static_cast<double>(k + 2) > 0.5 * a) {
      const double q = 0.5 * a / static_cast<double>(k + 2);
      const double log_tail = static_cast<double>(k + 1) * log_a_half -
                              std::lgamma(static_cast<double>(k) + 2.0) +
                              std::log(2.0 / (1.0 - q));
      if (log_tail <= std::log(tol)) break;
    }
    if (k >= k_cap) {
      throw std::runtime_error(
          "chebyshev_exp_apply: expansion did not converge at the requested "
          "tolerance");
    }
    matvec(tcur, tmp);
    for (size_t i = 0; i < dim; ++i) {
      tnext[i] = 2.0 * tmp[i] / radius - tprev[i];
    }
    ++k;
    phase *= step;
    jk = boost::math::cyl_bessel_j(static_cast<int>(k), a);
    for (size_t i = 0; i < dim; ++i) y[i] += 2.0 * jk * phase * tnext[i];
    std::swap(tprev, tcur);
    std::swap(tcur, tnext);
  }
  return y;
}

}  // namespace detail

StateVector apply_rotation(const StateVector& state, Axis axis, double angle,
                           double tol) {
  if (!state.basis || state.amp.size() != static_cast<size_t>(state.basis->dim())) {
    throw std::invalid_argument("apply_rotation: malformed state");
  }
  if (tol <= 0.0) {
    throw std::invalid_argument("apply_rotation: tol must be positive");
  }
  StateVector out;
  out.basis = state.basis;
  if (axis == Axis::z) {
    out.amp.resize(state.amp.size());
    for (size_t i = 0; i < state.amp.size(); ++i) {
      const Triple& t = state.basis->state(static_cast<int>(i));
      out.amp[i] = state.amp[i] * std::polar(1.0, -angle * (t[0] - t[2]));
    }
    return out;
  }
  const CollectiveOperator op = build_operator(
      state.basis, axis == Axis::x ? OperatorKind::jx : OperatorKind::jy);
  // The collective spin components have spectrum in [-N, N] exactly.
  const double radius = static_cast<double>(state.basis->n());
  out.amp = detail::chebyshev_exp_apply(
      [&op](const std::vector<complex>& v, std::vector<complex>& w) {
        op.apply(v, w);
      },
      state.amp, angle, radius, tol);
  return out;
}

StateVector evolve(const StateVector& state, const CollectiveOperator& generator,
                   double theta, double tol) {
  if (!generator.hermitian()) {
    throw std::invalid_argument("evolve: generator must be Hermitian");
  }
  if (!state.basis || !generator.basis() ||
      state.basis->n() != generator.basis()->n() ||
      state.amp.size() != static_cast<size_t>(state.basis->dim())) {
    throw std::invalid_argument("evolve: basis mismatch");
  }
  StateVector out;
  out.basis = state.basis;
  if (generator.diagonal()) {
    std::vector<double> d(state.amp.size(), 0.0);
    for (const auto& e : generator.entries()) {
      d[static_cast<size_t>(e.row)] += e.value.real();
    }
    out.amp.resize(state.amp.size());
    for (size_t i = 0; i < state.amp.size(); ++i) {
      out.amp[i] = state.amp[i] * std::polar(1.0, -theta * d[i]);
    }
    return out;
  }
  out.amp = detail::chebyshev_exp_apply(
      [&generator](const std::vector<complex>& v, std::vector<complex>& w) {
        generator.apply(v, w);
      },
      state.amp, theta, generator.gershgorin_bound(), tol);
  return out;
}

}  // namespace lsvmet::fock_space
