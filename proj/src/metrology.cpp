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

#include "lsvmet/metrology.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lsvmet::metrology {

namespace {

void validate_context(const EstimationContext& ctx, const char* who) {
  if (!(ctx.T > 0.0)) {
    throw std::invalid_argument(std::string(who) + ": T must be positive");
  }
  if (ctx.nu < 1) {
    throw std::invalid_argument(std::string(who) + ": nu must be >= 1");
  }
}

}  // namespace

double qfi_pure(const states::StateVector& state,
                const fock_space::CollectiveOperator& generator) {
  if (!generator.hermitian()) {
    throw std::invalid_argument("qfi_pure: generator must be Hermitian");
  }
  if (!state.basis || !generator.basis() ||
      state.basis->n() != generator.basis()->n() ||
      state.amp.size() != static_cast<size_t>(state.basis->dim())) {
    throw std::invalid_argument("qfi_pure: basis mismatch");
  }
  std::vector<fock_space::complex> g;
  generator.apply(state.amp, g);
  double second = 0.0;
  fock_space::complex first{0.0, 0.0};
  for (size_t i = 0; i < g.size(); ++i) {
    second += std::norm(g[i]);
    first += std::conj(state.amp[i]) * g[i];
  }
  const double mean = first.real();
  double fq = 4.0 * (second - mean * mean);
  if (fq < 0.0) {
    if (fq < -1e-10 * std::max(1.0, second)) {
      throw std::runtime_error("qfi_pure: variance below the negative-clamp tolerance");
    }
    fq = 0.0;
  }
  return fq;
}

double qfi_cat(const states::CatState& cat) {
  const double wa2 = std::norm(cat.w_a);
  const double wb2 = std::norm(cat.w_b);
  const double sum = wa2 + wb2;
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("qfi_cat: branch weights must be normalized");
  }
  // Renormalizing by the weight sum makes the equal-weight case exact:
  // |w|^2/sum is exactly 1/2 whenever wa2 == wb2, so the result is gap^2
  // in exact integer arithmetic for integer gaps.
  const double gap = cat.lambda_a - cat.lambda_b;
  return 4.0 * (wa2 / sum) * (wb2 / sum) * gap * gap;
}

double qcrb(double fq, const EstimationContext& ctx) {
  validate_context(ctx, "qcrb");
  if (!(fq > 0.0)) {
    throw std::invalid_argument("qcrb: F_Q must be positive");
  }
  return 1.0 / (std::sqrt(static_cast<double>(ctx.nu)) * ctx.T * std::sqrt(fq));
}

double hl_bound(const EstimationContext& ctx) {
  validate_context(ctx, "hl_bound");
  if (ctx.n < 1) {
    throw std::invalid_argument("hl_bound: N must be >= 1");
  }
  const double two_j = 2.0 * ctx.j;
  if (ctx.j <= 0.0 || std::abs(two_j - std::round(two_j)) > 1e-9) {
    throw std::invalid_argument("hl_bound: j must be a positive half-integer");
  }
  // lambda = m^2 over m = -j..j: max is j^2; min is 0 for integer j and
  // 1/4 for half-integer j.
  const double lambda_max = ctx.j * ctx.j;
  const bool integer_j = std::abs(two_j - 2.0 * std::round(ctx.j)) < 1e-9;
  const double lambda_min = integer_j ? 0.0 : 0.25;
  const double gap = lambda_max - lambda_min;
  if (gap <= 0.0) {
    throw std::invalid_argument(
        "hl_bound: degenerate generator (spin-1/2 has constant (j_z)^2)");
  }
  return 1.0 /
         (std::sqrt(static_cast<double>(ctx.nu)) * ctx.T * ctx.n * gap);
}

double qfi_dicke_fast(long long n, DickeFrame frame) {
  if (n <= 0 || n % 2 != 0) {
    throw std::invalid_argument("qfi_dicke_fast: N must be even and positive");
  }
  if (n > std::numeric_limits<int>::max()) {
    throw std::invalid_argument("qfi_dicke_fast: N out of range");
  }
  const std::vector<double> p = states::dicke_probabilities(static_cast<int>(n));
  double mean = 0.0;
  for (size_t k = 0; k < p.size(); ++k) mean += p[k] * (2.0 * k);
  double var = 0.0;
  double pair_term = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    const double d = 2.0 * static_cast<double>(k) - mean;
    var += p[k] * d * d;
    pair_term += p[k] * static_cast<double>(k) * (static_cast<double>(k) + 1.0);
  }
  if (frame == DickeFrame::free_phase) {
    return 4.0 * var;
  }
  return var + 2.0 * pair_term;
}

}  // namespace lsvmet::metrology
