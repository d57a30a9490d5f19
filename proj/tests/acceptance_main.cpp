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

// Acceptance gate: one pass/fail line per criterion, exit code equal to the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dense_oracle.hpp"
#include "lsvmet/analysis.hpp"
#include "lsvmet/fock_space.hpp"
#include "lsvmet/metrology.hpp"
#include "lsvmet/protocols.hpp"
#include "lsvmet/states.hpp"

namespace {

namespace fock = lsvmet::fock_space;
namespace states = lsvmet::states;
namespace metrology = lsvmet::metrology;
namespace protocols = lsvmet::protocols;
namespace analysis = lsvmet::analysis;
using fock::complex;

constexpr double kPi = 3.14159265358979323846;

struct Check {
  int failures = 0;
  std::vector<std::string> details;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (details.size() < 5) details.push_back(what);
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// ------------------------------------------------------------------------
// criterion 1: NOON Heisenberg-limit saturation

void criterion_noon(Check& c) {
  for (int n = 2; n <= 1000000; n += 2) {
    const double fq = metrology::qfi_cat(states::noon_state(n));
    if (fq != static_cast<double>(n) * n) {
      c.expect(false, "qfi_cat(noon " + std::to_string(n) + ") = " + fmt(fq));
      break;
    }
  }
  for (int n = 2; n <= 20; n += 2) {
    const auto cat = states::noon_state(n);
    const auto v = states::expand_cat(cat);
    const auto h = fock::build_operator(v.basis, fock::OperatorKind::h);
    const double full = metrology::qfi_pure(v, h);
    c.expect(std::abs(metrology::qfi_cat(cat) - full) <= 1e-10 * full,
             "noon N=" + std::to_string(n) + " analytic vs full: " +
                 fmt(metrology::qfi_cat(cat)) + " vs " + fmt(full));
  }
}

// ------------------------------------------------------------------------
// criterion 2: paired-DFS enhancement

void criterion_pairs(Check& c) {
  const double f_pair = metrology::qfi_cat(states::paired_dfs_cat(2));
  const double f_single = metrology::qfi_cat(states::single_ion_cat());
  c.expect(f_pair == 576.0, "F_Q(pair, N=2) = " + fmt(f_pair));
  c.expect(f_single == 144.0, "F_Q(single ion) = " + fmt(f_single));
  // Two entangled ions against two independent ones: SNR gain sqrt(2).
  const double gain = std::sqrt(f_pair / (2.0 * f_single));
  c.expect(gain == std::sqrt(2.0), "SNR gain = " + fmt(gain));
  for (int n = 2; n <= 100; n += 2) {
    const double fq = metrology::qfi_cat(states::paired_dfs_cat(n));
    c.expect(fq == 144.0 * n * n,
             "F_Q(pair, N=" + std::to_string(n) + ") = " + fmt(fq));
  }
}

// ------------------------------------------------------------------------
// criterion 3: Dicke QFI scaling

void criterion_dicke_scaling(Check& c, std::string& info) {
  const auto grid = analysis::even_log_grid(10, 1000, 25);
  std::vector<std::pair<double, double>> pts;
  std::vector<std::pair<double, double>> pts_phase;
  for (long long n : grid) {
    pts.emplace_back(static_cast<double>(n), metrology::qfi_dicke_fast(n));
    pts_phase.emplace_back(
        static_cast<double>(n),
        metrology::qfi_dicke_fast(n, metrology::DickeFrame::free_phase));
  }
  const auto fit = analysis::power_law_fit(pts);
  c.expect(fit.gamma >= 1.88 && fit.gamma <= 2.00,
           "gamma = " + fmt(fit.gamma));
  c.expect(fit.r2 > 0.999, "R^2 = " + fmt(fit.r2));
  const auto phase_fit = analysis::power_law_fit(pts_phase);
  info = "Ramsey-frame gamma = " + fmt(fit.gamma) + ", R^2 = " + fmt(fit.r2) +
         "; bare-phase frame scales linearly (gamma = " +
         fmt(phase_fit.gamma) + ")";
}

// ------------------------------------------------------------------------
// criterion 4: three-curve ordering

void criterion_ordering(Check& c) {
  const metrology::EstimationContext ctx;
  for (long long n = 2; n <= 10000; n += 2) {
    const double dk_sql = metrology::qcrb(static_cast<double>(n), ctx);
    const double dk_hl =
        metrology::qcrb(static_cast<double>(n) * static_cast<double>(n), ctx);
    const double cap = 10.0 * std::log10(static_cast<double>(n));
    for (metrology::DickeFrame frame :
         {metrology::DickeFrame::free_phase, metrology::DickeFrame::ramsey}) {
      const double fq = metrology::qfi_dicke_fast(n, frame);
      const double dk_dicke = metrology::qcrb(fq, ctx);
      const double db = analysis::improvement_db(fq, n);
      if (!(dk_hl <= dk_dicke && dk_dicke <= dk_sql)) {
        c.expect(false, "ordering broken at N=" + std::to_string(n));
      }
      if (!(db > 0.0 && db < cap)) {
        c.expect(false, "improvement " + fmt(db) + " dB outside (0, " +
                            fmt(cap) + ") at N=" + std::to_string(n));
      }
    }
  }
}

// ------------------------------------------------------------------------
// criterion 5: parity closed form

void criterion_parity(Check& c) {
  for (int n = 2; n <= 20; n += 2) {
    const auto scan = protocols::parity_scan(n, 0.0, kPi, 64);
    for (const auto& row : scan.rows) {
      if (!(row.abs_diff && *row.abs_diff <= 1e-9)) {
        c.expect(false, "N=" + std::to_string(n) + " kt=" + fmt(row.kt) +
                            " |sim - closed| = " +
                            fmt(row.abs_diff ? *row.abs_diff : -1.0));
      }
    }
  }
}

// ------------------------------------------------------------------------
// criterion 6: moment-measurement scaling

void criterion_moment(Check& c) {
  std::vector<std::pair<double, double>> pts;
  for (int n = 10; n <= 60; n += 2) {
    metrology::EstimationContext ctx;
    ctx.n = n;
    const auto r = protocols::optimal_moment_precision(n, ctx);
    const double floor = metrology::qcrb(
        metrology::qfi_dicke_fast(n, metrology::DickeFrame::free_phase), ctx);
    c.expect(r.delta_kappa >= floor,
             "N=" + std::to_string(n) + " delta_kappa " + fmt(r.delta_kappa) +
                 " below QCRB " + fmt(floor));
    pts.emplace_back(static_cast<double>(n), r.delta_kappa);
  }
  const auto fit = analysis::power_law_fit(pts);
  const double b = -fit.gamma;
  c.expect(b >= 0.38 && b <= 0.54, "b = " + fmt(b));
  c.expect(fit.a >= 1.48 * 0.7 && fit.a <= 1.48 * 1.3, "a = " + fmt(fit.a));
}

// ------------------------------------------------------------------------
// criterion 7: sensitivity conversion

void criterion_sensitivity(Check& c) {
  const double c02 = analysis::kappa_to_c02({1e-9, 8.6e15, 1.0});
  c.expect(c02 >= 1.16e-25 / 2.0 && c02 <= 1.16e-25 * 2.0,
           "C_0^(2) = " + fmt(c02));
}

// ------------------------------------------------------------------------
// criterion 8: dense-oracle equivalence

// Pulse generator of the parity readout over the full three-mode basis.
fock::CollectiveOperator plus_zero_pulse(
    const std::shared_ptr<const fock::FockBasis>& b) {
  std::vector<fock::CollectiveOperator::Entry> entries;
  for (int i = 0; i < b->dim(); ++i) {
    const auto& t = b->state(i);
    if (t[1] > 0) {
      const int j = b->index({t[0] + 1, t[1] - 1, t[2]});
      const double v = 0.5 * std::sqrt((t[0] + 1.0) * t[1]);
      entries.push_back({j, i, {v, 0.0}});
      entries.push_back({i, j, {v, 0.0}});
    }
  }
  return {b, std::move(entries), true};
}

bool close8(double a, double b) {
  return std::abs(a - b) <= 1e-8 * std::max({1.0, std::abs(a), std::abs(b)});
}

void criterion_oracle(Check& c) {
  using Eigen::MatrixXcd;
  using Eigen::VectorXcd;

  // Moment protocol against dense matrix exponentials.
  for (int n : {2, 4, 6}) {
    const auto probe = states::dicke_balanced(n);
    const auto b = probe.basis;
    const MatrixXcd h_dense =
        dense_oracle::dense_matrix(fock::build_operator(b, fock::OperatorKind::h));
    const MatrixXcd jx_dense =
        dense_oracle::dense_matrix(fock::build_operator(b, fock::OperatorKind::jx));
    const VectorXcd psi0 = dense_oracle::to_eigen(probe);
    metrology::EstimationContext ctx;
    ctx.n = n;

    const auto dense_m2 = [&](double kt) {
      const VectorXcd psi = dense_oracle::expm_herm(h_dense, kt) * psi0;
      return (jx_dense * psi).squaredNorm();
    };
    for (double kt : {0.3, 0.9, 1.3}) {
      const VectorXcd psi = dense_oracle::expm_herm(h_dense, kt) * psi0;
      const double m2 = (jx_dense * psi).squaredNorm();
      const double m4 = (jx_dense * jx_dense * psi).squaredNorm();
      const double var = m4 - m2 * m2;
      const double h = 1e-5 * std::max(1.0, kt);
      const double slope = (dense_m2(kt + h) - dense_m2(kt - h)) / (2.0 * h);
      const double dk = std::sqrt(var) / std::abs(slope);

      const auto pt = protocols::moment_point(probe, kt, ctx);
      c.expect(close8(pt.mean_jx2, m2), "moment mean N=" + std::to_string(n) +
                                            " kt=" + fmt(kt) + ": " +
                                            fmt(pt.mean_jx2) + " vs " + fmt(m2));
      c.expect(close8(pt.var_jx2, var), "moment var N=" + std::to_string(n) +
                                            " kt=" + fmt(kt));
      c.expect(close8(pt.slope, slope), "moment slope N=" + std::to_string(n) +
                                            " kt=" + fmt(kt));
      c.expect(close8(pt.delta_kappa, dk),
               "moment delta_kappa N=" + std::to_string(n) + " kt=" + fmt(kt));
    }
  }

  // Parity interferometer against the dense three-mode sequence.
  for (int n = 1; n <= 6; ++n) {
    const auto psi = states::noon_vector(n);
    const auto b = psi.basis;
    const MatrixXcd h_dense =
        dense_oracle::dense_matrix(fock::build_operator(b, fock::OperatorKind::h));
    const MatrixXcd pulse_dense = dense_oracle::dense_matrix(plus_zero_pulse(b));
    const MatrixXcd par_dense = dense_oracle::dense_matrix(
        fock::build_operator(b, fock::OperatorKind::parity0));
    const MatrixXcd u_pulse = dense_oracle::expm_herm(pulse_dense, 0.5 * kPi);
    const VectorXcd psi0 = dense_oracle::to_eigen(psi);

    const auto dense_parity = [&](double kt) {
      const VectorXcd out =
          u_pulse * (dense_oracle::expm_herm(h_dense, kt) * psi0);
      return (out.adjoint() * par_dense * out)(0, 0).real();
    };
    for (double kt : {0.0, 0.4, 1.1, 2.7}) {
      c.expect(close8(protocols::parity_signal(n, kt), dense_parity(kt)),
               "parity N=" + std::to_string(n) + " kt=" + fmt(kt));
    }

    // Error propagation of the parity readout at kt = 0.4.
    if (n % 2 == 0) {
      const double p = dense_parity(0.4);
      const double h = 1e-6;
      const double slope =
          (dense_parity(0.4 + h) - dense_parity(0.4 - h)) / (2.0 * h);
      const double dk = std::sqrt(std::max(0.0, 1.0 - p * p)) / std::abs(slope);
      metrology::EstimationContext ctx;
      ctx.n = n;
      const auto r = protocols::parity_precision(n, 0.4, ctx);
      c.expect(close8(r.delta_kappa, dk),
               "parity delta_kappa N=" + std::to_string(n) + ": " +
                   fmt(r.delta_kappa) + " vs " + fmt(dk));
    }
  }
}

// ------------------------------------------------------------------------
// criterion 9: property suite

void criterion_properties(Check& c) {
  std::mt19937 rng(20260818);

  // Norm preservation under rotations and generic evolution.
  for (int n : {3, 8, 12}) {
    const auto b = fock::enumerate_basis(n);
    const auto v = dense_oracle::random_state(b, rng);
    for (fock::Axis axis : {fock::Axis::x, fock::Axis::y, fock::Axis::z}) {
      const double norm = fock::apply_rotation(v, axis, 1.234).norm();
      c.expect(std::abs(norm - 1.0) <= 1e-10,
               "rotation norm drift " + fmt(norm - 1.0));
    }
    const auto hy = fock::build_operator(b, fock::OperatorKind::hy);
    const double norm = fock::evolve(v, hy, 0.8).norm();
    c.expect(std::abs(norm - 1.0) <= 1e-10, "evolve norm drift " + fmt(norm - 1.0));
  }

  // [Jx, Jy] = i Jz on random states.
  for (int n : {2, 7, 14}) {
    const auto b = fock::enumerate_basis(n);
    const auto jx = fock::build_operator(b, fock::OperatorKind::jx);
    const auto jy = fock::build_operator(b, fock::OperatorKind::jy);
    const auto jz = fock::build_operator(b, fock::OperatorKind::jz);
    const auto v = dense_oracle::random_state(b, rng);
    const auto xy = jx.apply(jy.apply(v));
    const auto yx = jy.apply(jx.apply(v));
    const auto zv = jz.apply(v);
    double err = 0.0;
    for (size_t i = 0; i < zv.amp.size(); ++i) {
      err += std::norm(xy.amp[i] - yx.amp[i] - complex{0.0, 1.0} * zv.amp[i]);
    }
    c.expect(std::sqrt(err) <= 1e-12 * n,
             "commutator residual " + fmt(std::sqrt(err)) + " at N=" +
                 std::to_string(n));
  }

  // DFS invariance: Dicke p_k survive any collective J_z phase.
  for (int n : {4, 10}) {
    const auto dicke = states::dicke_balanced(n);
    const auto p = states::dicke_probabilities(n);
    const auto rotated = fock::apply_rotation(dicke, fock::Axis::z, 1.7);
    for (int i = 0; i < dicke.basis->dim(); ++i) {
      const auto& t = dicke.basis->state(i);
      if (t[0] != t[2]) continue;
      const double pk = std::norm(rotated.amp[static_cast<size_t>(i)]);
      c.expect(std::abs(pk - p[static_cast<size_t>(t[0])]) <= 1e-12,
               "Dicke p_k drift under Jz phase at N=" + std::to_string(n));
    }
  }

  // QFI additivity on product states.
  const std::array<complex, 3> amps = {
      {complex{0.6, 0.0}, complex{0.0, 0.8}, complex{0.0, 0.0}}};
  const auto single = states::product_state(1, amps);
  const double f1 = metrology::qfi_pure(
      single, fock::build_operator(single.basis, fock::OperatorKind::h));
  for (int n : {2, 4, 6}) {
    const auto probe = states::product_state(n, amps);
    const double fn = metrology::qfi_pure(
        probe, fock::build_operator(probe.basis, fock::OperatorKind::h));
    c.expect(std::abs(fn - n * f1) <= 1e-10 * std::max(1.0, fn),
             "additivity at N=" + std::to_string(n) + ": " + fmt(fn) +
                 " vs " + fmt(n * f1));
  }

  // Finite-difference slope vs commutator identity.
  const auto probe = states::dicke_balanced(8);
  const auto jx = fock::build_operator(probe.basis, fock::OperatorKind::jx);
  const auto h = fock::build_operator(probe.basis, fock::OperatorKind::h);
  metrology::EstimationContext ctx;
  ctx.n = 8;
  for (double kt : {0.35, 0.8, 1.25}) {
    const auto pt = protocols::moment_point(probe, kt, ctx);
    const auto psi = fock::apply_diagonal_phase(probe, kt);
    const auto a_psi = jx.apply(jx.apply(psi));
    const auto h_psi = h.apply(psi);
    complex inner{0.0, 0.0};
    for (size_t i = 0; i < psi.amp.size(); ++i) {
      inner += std::conj(h_psi.amp[i]) * a_psi.amp[i];
    }
    const double comm = -2.0 * inner.imag();
    c.expect(std::abs(pt.slope - comm) <=
                 1e-6 * std::max(std::abs(pt.slope), std::abs(comm)),
             "slope cross-check at kt=" + fmt(kt));
  }
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Check&, std::string&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "NOON Heisenberg-limit saturation",
       [](Check& c, std::string&) { criterion_noon(c); }},
      {2, "paired-DFS enhancement",
       [](Check& c, std::string&) { criterion_pairs(c); }},
      {3, "Dicke QFI scaling", criterion_dicke_scaling},
      {4, "precision-curve ordering",
       [](Check& c, std::string&) { criterion_ordering(c); }},
      {5, "parity closed form",
       [](Check& c, std::string&) { criterion_parity(c); }},
      {6, "moment-measurement scaling",
       [](Check& c, std::string&) { criterion_moment(c); }},
      {7, "sensitivity conversion",
       [](Check& c, std::string&) { criterion_sensitivity(c); }},
      {8, "dense-oracle equivalence",
       [](Check& c, std::string&) { criterion_oracle(c); }},
      {9, "property suite",
       [](Check& c, std::string&) { criterion_properties(c); }},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    Check check;
    std::string info;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check, info);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool ok = check.failures == 0;
    std::printf("[%s] criterion %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL",
                criterion.id, criterion.name, seconds);
    if (!info.empty()) {
      std::printf("       %s\n", info.c_str());
    }
    for (const auto& detail : check.details) {
      std::printf("       %s\n", detail.c_str());
    }
    if (!ok) ++failed;
  }
  return failed;
}
