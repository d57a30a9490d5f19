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

#include "lsvmet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lsvmet::analysis {

PowerLawFit power_law_fit(const std::vector<std::pair<double, double>>& data) {
  if (data.size() < 3) {
    throw std::invalid_argument("power_law_fit: need at least 3 points");
  }
  double first_n = data.front().first;
  bool distinct = false;
  for (const auto& [n, y] : data) {
    if (!(n > 0.0) || !(y > 0.0)) {
      throw std::invalid_argument("power_law_fit: N and y must be positive");
    }
    if (n != first_n) distinct = true;
  }
  if (!distinct) {
    throw std::invalid_argument("power_law_fit: need at least two distinct N");
  }

  const size_t m = data.size();
  double xbar = 0.0, ybar = 0.0;
  for (const auto& [n, y] : data) {
    xbar += std::log(n);
    ybar += std::log(y);
  }
  xbar /= static_cast<double>(m);
  ybar /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, y] : data) {
    const double dx = std::log(n) - xbar;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - ybar);
  }
  const double gamma = sxy / sxx;
  const double loga = ybar - gamma * xbar;

  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& [n, y] : data) {
    const double ly = std::log(y);
    const double pred = loga + gamma * std::log(n);
    ss_res += (ly - pred) * (ly - pred);
    ss_tot += (ly - ybar) * (ly - ybar);
  }
  double r2;
  if (ss_tot <= 1e-300) {
    r2 = ss_res <= 1e-300 ? 1.0 : 0.0;
  } else {
    r2 = 1.0 - ss_res / ss_tot;
  }
  r2 = std::clamp(r2, 0.0, 1.0);

  PowerLawFit fit;
  fit.a = std::exp(loga);
  fit.gamma = gamma;
  fit.r2 = r2;
  fit.n_min = data.front().first;
  fit.n_max = data.front().first;
  for (const auto& [n, y] : data) {
    fit.n_min = std::min(fit.n_min, n);
    fit.n_max = std::max(fit.n_max, n);
  }
  return fit;
}

double improvement_db(double fq, long long n) {
  if (!(fq > 0.0)) {
    throw std::invalid_argument("improvement_db: Fisher information must be positive");
  }
  if (n < 1) {
    throw std::invalid_argument("improvement_db: N must be >= 1");
  }
  return 10.0 * std::log10(fq / static_cast<double>(n));
}

std::vector<long long> even_log_grid(long long n_min, long long n_max, int points) {
  if (n_min < 2 || n_max < n_min) {
    throw std::invalid_argument("even_log_grid: need 2 <= n_min <= n_max");
  }
  if (points < 1) {
    throw std::invalid_argument("even_log_grid: need at least one point");
  }
  const double lmin = std::log(static_cast<double>(n_min));
  const double lmax = std::log(static_cast<double>(n_max));
  const long long top = std::max(2LL, 2 * std::llround(static_cast<double>(n_max) / 2.0));
  std::vector<long long> grid;
  grid.reserve(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0
                                 : static_cast<double>(i) /
                                       static_cast<double>(points - 1);
    const double x = std::exp(lmin + t * (lmax - lmin));
    long long n = 2 * std::llround(x / 2.0);
    n = std::max(n, 2LL);
    if (!grid.empty() && n <= grid.back()) {
      // Collision after rounding: advance to the next free even value so
      // the grid keeps its requested length, unless the range has no
      // headroom left, in which case the duplicate is dropped.
      if (grid.back() + 2 > top) continue;
      n = grid.back() + 2;
    }
    grid.push_back(n);
  }
  return grid;
}

std::vector<QcrbRow> qcrb_curve(long long n_min, long long n_max, int points,
                                const metrology::EstimationContext& ctx,
                                metrology::DickeFrame frame) {
  const std::vector<long long> grid = even_log_grid(n_min, n_max, points);
  std::vector<QcrbRow> rows;
  rows.reserve(grid.size());
  for (long long n : grid) {
    QcrbRow row;
    row.n = n;
    const double nn = static_cast<double>(n);
    row.dk_sql = metrology::qcrb(nn, ctx);
    row.dk_hl = metrology::qcrb(nn * nn, ctx);
    const double fq = metrology::qfi_dicke_fast(n, frame);
    row.dk_dicke = metrology::qcrb(fq, ctx);
    row.improvement_db = improvement_db(fq, n);
    rows.push_back(row);
  }
  return rows;
}

double wigner_eckart_diag(double j, double m, double reduced) {
  const double two_j = 2.0 * j;
  const double two_m = 2.0 * m;
  if (std::abs(two_j - std::llround(two_j)) > 1e-9 ||
      std::abs(two_m - std::llround(two_m)) > 1e-9) {
    throw std::invalid_argument("wigner_eckart_diag: j and m must be half-integers");
  }
  if (std::abs(m) > j + 1e-12) {
    throw std::invalid_argument("wigner_eckart_diag: |m| must not exceed j");
  }
  const double jm = j - m;
  if (std::abs(jm - std::llround(jm)) > 1e-9) {
    throw std::invalid_argument("wigner_eckart_diag: j - m must be an integer");
  }
  if (j < 1.0) {
    throw std::invalid_argument(
        "wigner_eckart_diag: rank-2 tensor needs j >= 1");
  }
  const double den =
      (2.0 * j + 3.0) * (j + 1.0) * (2.0 * j + 1.0) * j * (2.0 * j - 1.0);
  return (-j * (j + 1.0) + 3.0 * m * m) * reduced / std::sqrt(den);
}

double kappa_to_c02(const SensitivityInput& inp) {
  if (!(inp.energy_ratio > 0.0)) {
    throw std::invalid_argument("kappa_to_c02: energy ratio must be positive");
  }
  if (!(inp.jz2_fluct > 0.0)) {
    throw std::invalid_argument("kappa_to_c02: jz^2 fluctuation scale must be positive");
  }
  if (inp.delta_kappa_over_2pi < 0.0) {
    throw std::invalid_argument("kappa_to_c02: frequency resolution must be non-negative");
  }
  return inp.delta_kappa_over_2pi * inp.jz2_fluct / inp.energy_ratio;
}

}  // namespace lsvmet::analysis
