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

#include "lsvmet/protocols.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lsvmet/states.hpp"

namespace lsvmet::protocols {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kSlopeFloor = 1e-8;

using fock_space::complex;
using fock_space::StateVector;

void validate_context(const EstimationContext& ctx, const char* who) {
  if (!(ctx.T > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": T must be positive");
  }
  if (ctx.nu < 1) {
    throw std::invalid_argument(std::string(who) + ": nu must be >= 1");
  }
}

// Shared moment-protocol state: the probe, the Jx operator over its basis,
// and the diagonal of H, built once per scan.
class MomentEngine {
 public:
  MomentEngine(const StateVector& probe, const EstimationContext& ctx)
      : probe_(probe),
        ctx_(ctx),
        jx_(fock_space::build_operator(probe.basis, fock_space::OperatorKind::jx)) {
    if (!probe.basis ||
        probe.amp.size() != static_cast<size_t>(probe.basis->dim())) {
      throw std::invalid_argument("moment protocol: malformed probe state");
    }
    h_diag_.resize(probe.amp.size());
    for (size_t i = 0; i < h_diag_.size(); ++i) {
      const auto& t = probe.basis->state(static_cast<int>(i));
      h_diag_[i] = static_cast<double>(t[0] + t[2]);
    }
  }

  double mean_jx2(double kt) const {
    std::vector<complex> psi, y;
    evolved(kt, psi);
    jx_.apply(psi, y);
    double m2 = 0.0;
    for (const complex& z : y) m2 += std::norm(z);
    return m2;
  }

  MomentPoint point(double kt) const {
    std::vector<complex> psi, y1, y2;
    evolved(kt, psi);
    jx_.apply(psi, y1);
    double m2 = 0.0;
    for (const complex& z : y1) m2 += std::norm(z);
    jx_.apply(y1, y2);
    double m4 = 0.0;
    for (const complex& z : y2) m4 += std::norm(z);
    double var = m4 - m2 * m2;
    if (var < 0.0) var = 0.0;  // clamp the -1e-8-scale floating-point residue

    const double h = 1e-5 * std::max(1.0, kt);
    const double slope = (mean_jx2(kt + h) - mean_jx2(kt - h)) / (2.0 * h);

    MomentPoint pt;
    pt.kt = kt;
    pt.mean_jx2 = m2;
    pt.var_jx2 = var;
    pt.slope = slope;
    if (std::abs(slope) <= kSlopeFloor) {
      pt.unbounded = true;
      pt.delta_kappa = std::numeric_limits<double>::infinity();
      return pt;
    }
    // d<A>/d(kt) = i<[H, A]> = -2 Im <H psi, A psi> on the evolved state.
    complex z{0.0, 0.0};
    for (size_t i = 0; i < psi.size(); ++i) {
      z += std::conj(h_diag_[i] * psi[i]) * y2[i];
    }
    const double comm = -2.0 * z.imag();
    if (std::abs(slope - comm) > 1e-6 * std::max(std::abs(slope), std::abs(comm))) {
      throw std::runtime_error(
          "moment protocol: finite-difference and commutator derivatives "
          "disagree beyond 1e-6 relative");
    }
    pt.delta_kappa = std::sqrt(var) /
                     (ctx_.T * std::sqrt(static_cast<double>(ctx_.nu)) *
                      std::abs(slope));
    return pt;
  }

 private:
  void evolved(double kt, std::vector<complex>& psi) const {
    psi.resize(probe_.amp.size());
    for (size_t i = 0; i < psi.size(); ++i) {
      psi[i] = probe_.amp[i] * std::polar(1.0, -kt * h_diag_[i]);
    }
  }

  const StateVector& probe_;
  EstimationContext ctx_;
  fock_space::CollectiveOperator jx_;
  std::vector<double> h_diag_;
};

PrecisionResult to_precision(const MomentPoint& pt, int n,
                             const EstimationContext& ctx) {
  PrecisionResult r;
  r.n = n;
  r.protocol = metrology::Protocol::moment;
  r.fisher = pt.unbounded ? 0.0 : pt.slope * pt.slope / pt.var_jx2;
  r.delta_kappa = pt.delta_kappa;
  r.kt = pt.kt;
  r.T = ctx.T;
  r.nu = ctx.nu;
  r.unbounded = pt.unbounded;
  return r;
}

}  // namespace

double parity_signal(int n, double kt, double tol) {
  if (n < 1) {
    throw std::invalid_argument("parity_signal: N must be >= 1");
  }
  // Two-mode subspace (m = +1, m = 0), indexed by k = n_plus; n_zero = N-k.
  const size_t dim = static_cast<size_t>(n) + 1;
  std::vector<complex> psi(dim, complex{0.0, 0.0});
  psi[0] = complex{kInvSqrt2, 0.0};
  psi[dim - 1] = complex{kInvSqrt2, 0.0};
  for (size_t k = 0; k < dim; ++k) {
    psi[k] *= std::polar(1.0, -kt * static_cast<double>(k));
  }
  // pi/2 pulse generated by Sx = (adag_plus a_zero + adag_zero a_plus)/2,
  // tridiagonal with couplings sqrt((k+1)(N-k))/2; spectrum is exactly
  // {-N/2, ..., N/2}.
  std::vector<double> off(dim - 1);
  for (size_t k = 0; k + 1 < dim; ++k) {
    off[k] = 0.5 * std::sqrt(static_cast<double>(k + 1) *
                             static_cast<double>(dim - 1 - k));
  }
  auto matvec = [&off, dim](const std::vector<complex>& x,
                            std::vector<complex>& y) {
    y.assign(dim, complex{0.0, 0.0});
    for (size_t k = 0; k + 1 < dim; ++k) {
      y[k] += off[k] * x[k + 1];
      y[k + 1] += off[k] * x[k];
    }
  };
  psi = fock_space::detail::chebyshev_exp_apply(matvec, psi, 0.5 * kPi,
                                                0.5 * n, tol);
  double parity = 0.0;
  for (size_t k = 0; k < dim; ++k) {
    const int n_zero = n - static_cast<int>(k);
    parity += (n_zero % 2 == 0 ? 1.0 : -1.0) * std::norm(psi[k]);
  }
  return parity;
}

double parity_closed_form(int n, double kt) {
  if (n < 1 || n % 2 != 0) {
    throw std::invalid_argument(
        "parity_closed_form: undefined for odd N (use parity_signal)");
  }
  const double sign = (n / 2) % 2 == 0 ? 1.0 : -1.0;
  return sign * std::cos(n * kt);
}

PrecisionResult parity_precision(int n, double kt, const EstimationContext& ctx) {
  validate_context(ctx, "parity_precision");
  if (n < 1 || n % 2 != 0) {
    throw std::invalid_argument("parity_precision: N must be even and positive");
  }
  const double s = std::sin(n * kt);
  if (std::abs(s) < 1e-12) {
    throw std::invalid_argument(
        "parity_precision: slope vanishes at this kt (sin(N kt) = 0), "
        "precision is unbounded");
  }
  // DeltaP = sqrt(1 - cos^2(N kt)) = |sin(N kt)| and |d<P>/d(kt)| =
  // N |sin(N kt)| cancel, leaving the HL value at every valid kt.
  PrecisionResult r;
  r.n = n;
  r.protocol = metrology::Protocol::parity;
  r.fisher = static_cast<double>(n) * static_cast<double>(n);
  r.delta_kappa = 1.0 / (ctx.T * std::sqrt(static_cast<double>(ctx.nu)) * n);
  r.kt = kt;
  r.T = ctx.T;
  r.nu = ctx.nu;
  return r;
}

ParityScan parity_scan(int n, double kt_min, double kt_max, int points) {
  if (points < 1) {
    throw std::invalid_argument("parity_scan: grid must have at least one point");
  }
  if (!(kt_min <= kt_max)) {
    throw std::invalid_argument("parity_scan: empty kt range");
  }
  ParityScan scan;
  scan.n = n;
  scan.rows.reserve(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double kt =
        points == 1 ? kt_min
                    : kt_min + i * (kt_max - kt_min) / (points - 1);
    ParityScanRow row;
    row.kt = kt;
    row.sim = parity_signal(n, kt);
    if (n % 2 == 0) {
      row.closed_form = parity_closed_form(n, kt);
      row.abs_diff = std::abs(row.sim - *row.closed_form);
    }
    scan.rows.push_back(row);
  }
  return scan;
}

MomentPoint moment_point(const StateVector& probe, double kt,
                         const EstimationContext& ctx) {
  validate_context(ctx, "moment_point");
  return MomentEngine(probe, ctx).point(kt);
}

PrecisionResult moment_precision(const StateVector& probe, double kt,
                                 const EstimationContext& ctx) {
  validate_context(ctx, "moment_precision");
  const MomentPoint pt = MomentEngine(probe, ctx).point(kt);
  return to_precision(pt, probe.basis->n(), ctx);
}

MomentScan moment_scan(const StateVector& probe, const EstimationContext& ctx,
                       const ScanGrid& grid) {
  validate_context(ctx, "moment_scan");
  if (grid.points < 1) {
    throw std::invalid_argument("moment_scan: grid must have at least one point");
  }
  if (!(grid.kt_min <= grid.kt_max)) {
    throw std::invalid_argument("moment_scan: empty kt range");
  }
  const MomentEngine engine(probe, ctx);
  MomentScan scan;
  scan.n = probe.basis->n();
  scan.points.reserve(static_cast<size_t>(grid.points));
  const double step = (grid.kt_max - grid.kt_min) / grid.points;
  size_t best = 0;
  bool any_bounded = false;
  for (int i = 0; i < grid.points; ++i) {
    const double kt = grid.points == 1 ? grid.kt_max
                                       : grid.kt_min + (i + 1) * step;
    scan.points.push_back(engine.point(kt));
    const MomentPoint& pt = scan.points.back();
    if (!pt.unbounded &&
        (!any_bounded || pt.delta_kappa < scan.points[best].delta_kappa)) {
      best = scan.points.size() - 1;
      any_bounded = true;
    }
  }
  if (!any_bounded) {
    throw std::runtime_error("moment_scan: every grid point is unbounded");
  }
  scan.optimum = scan.points[best];

  // One golden-section refinement pass around the grid minimum.
  const double kt_best = scan.points[best].kt;
  double lo = best > 0 ? scan.points[best - 1].kt : std::max(kt_best - step, 0.5 * step + grid.kt_min);
  double hi = best + 1 < scan.points.size() ? scan.points[best + 1].kt
                                            : grid.kt_max;
  if (hi > lo) {
    const double invphi = 0.6180339887498949;
    auto dk_at = [&engine](double kt) {
      const MomentPoint pt = engine.point(kt);
      return pt.unbounded ? std::numeric_limits<double>::infinity()
                          : pt.delta_kappa;
    };
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = dk_at(c), fd = dk_at(d);
    for (int it = 0; it < 200 && (b - a) > 1e-8; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = dk_at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = dk_at(d);
      }
    }
    const MomentPoint refined = engine.point(0.5 * (a + b));
    if (!refined.unbounded && refined.delta_kappa < scan.optimum.delta_kappa) {
      scan.optimum = refined;
    }
  }
  return scan;
}

PrecisionResult optimal_moment_precision(int n, const EstimationContext& ctx,
                                         const ScanGrid& grid) {
  const StateVector probe = states::dicke_balanced(n);
  const MomentScan scan = moment_scan(probe, ctx, grid);
  return to_precision(scan.optimum, n, ctx);
}

}  // namespace lsvmet::protocols
