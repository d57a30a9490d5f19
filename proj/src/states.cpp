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

#include "lsvmet/states.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace lsvmet::states {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Exact binomial coefficient; safe for the N <= 20 Dicke path where every
// intermediate stays far below 2^63.
std::uint64_t binom_u64(int a, int b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  std::uint64_t r = 1;
  for (int i = 1; i <= b; ++i) {
    r = r * static_cast<std::uint64_t>(a - b + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

double log_binom(double a, double b) {
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

void require_even_positive(int n, const char* who) {
  if (n <= 0 || n % 2 != 0) {
    throw std::invalid_argument(std::string(who) + ": N must be even and positive");
  }
}

void validate_spin_projection(double j, double m, const char* who) {
  const double two_j = 2.0 * j;
  if (j <= 0.0 || std::abs(two_j - std::round(two_j)) > 1e-9) {
    throw std::invalid_argument(std::string(who) + ": j must be a positive half-integer");
  }
  const double diff = j - m;
  if (std::abs(m) > j + 1e-12 || std::abs(diff - std::round(diff)) > 1e-9) {
    throw std::invalid_argument(std::string(who) + ": m must be a valid projection of j");
  }
}

std::string fmt_m(double m) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", m);
  return buf;
}

}  // namespace

std::vector<double> dicke_probabilities(int n) {
  require_even_positive(n, "dicke_probabilities");
  const int half = n / 2;
  std::vector<double> p(static_cast<size_t>(half) + 1);
  if (n <= 20) {
    // w_k = 2^(N-2k) C(N,k) C(N-k,k); the sum telescopes to C(2N,N).
    std::vector<std::uint64_t> w(p.size());
    std::uint64_t sum = 0;
    for (int k = 0; k <= half; ++k) {
      w[static_cast<size_t>(k)] = (std::uint64_t{1} << (n - 2 * k)) *
                                  binom_u64(n, k) * binom_u64(n - k, k);
      sum += w[static_cast<size_t>(k)];
    }
    for (int k = 0; k <= half; ++k) {
      p[static_cast<size_t>(k)] =
          static_cast<double>(w[static_cast<size_t>(k)]) / static_cast<double>(sum);
    }
    return p;
  }
  // Log-gamma evaluation with log-sum-exp normalization; the largest weight
  // sits near k = N/4.
  std::vector<double> lw(p.size());
  double mx = -1e300;
  for (int k = 0; k <= half; ++k) {
    lw[static_cast<size_t>(k)] = (n - 2 * k) * 0.6931471805599453 +
                                 log_binom(n, k) + log_binom(n - k, k);
    mx = std::max(mx, lw[static_cast<size_t>(k)]);
  }
  double s = 0.0;
  for (int k = 0; k <= half; ++k) {
    p[static_cast<size_t>(k)] = std::exp(lw[static_cast<size_t>(k)] - mx);
    s += p[static_cast<size_t>(k)];
  }
  for (double& v : p) v /= s;
  return p;
}

StateVector dicke_balanced(int n) {
  require_even_positive(n, "dicke_balanced");
  const std::vector<double> p = dicke_probabilities(n);
  StateVector s;
  s.basis = fock_space::enumerate_basis(n);
  s.amp.assign(static_cast<size_t>(s.basis->dim()), complex{0.0, 0.0});
  for (int k = 0; k <= n / 2; ++k) {
    const int i = s.basis->index({k, n - 2 * k, k});
    s.amp[static_cast<size_t>(i)] = std::sqrt(p[static_cast<size_t>(k)]);
  }
  return s;
}

CatState noon_state(int n) {
  if (n < 1) {
    throw std::invalid_argument("noon_state: N must be >= 1");
  }
  CatState c;
  c.lambda_a = static_cast<double>(n);
  c.label_a = "all m=+1";
  c.lambda_b = 0.0;
  c.label_b = "all m=0";
  c.w_a = c.w_b = complex{kInvSqrt2, 0.0};
  c.n = n;
  c.j = 1.0;
  c.triple_a = Triple{n, 0, 0};
  c.triple_b = Triple{0, n, 0};
  return c;
}

StateVector noon_vector(int n) {
  return expand_cat(noon_state(n));
}

CatState twin_fock_superposition(int n) {
  require_even_positive(n, "twin_fock_superposition");
  CatState c;
  c.lambda_a = static_cast<double>(n);
  c.label_a = "twin Fock m=+/-1";
  c.lambda_b = 0.0;
  c.label_b = "all m=0";
  c.w_a = c.w_b = complex{kInvSqrt2, 0.0};
  c.n = n;
  c.j = 1.0;
  c.triple_a = Triple{n / 2, 0, n / 2};
  c.triple_b = Triple{0, n, 0};
  return c;
}

StateVector twin_fock_vector(int n) {
  return expand_cat(twin_fock_superposition(n));
}

CatState paired_dfs_cat(int n, double j, double m_hi, double m_lo) {
  require_even_positive(n, "paired_dfs_cat");
  validate_spin_projection(j, m_hi, "paired_dfs_cat");
  validate_spin_projection(j, m_lo, "paired_dfs_cat");
  CatState c;
  c.lambda_a = n * m_hi * m_hi;
  c.label_a = "pairs m=+/-" + fmt_m(m_hi);
  c.lambda_b = n * m_lo * m_lo;
  c.label_b = "pairs m=+/-" + fmt_m(m_lo);
  c.w_a = c.w_b = complex{kInvSqrt2, 0.0};
  c.n = n;
  c.j = j;
  return c;
}

CatState single_ion_cat(double j, double m_hi, double m_lo) {
  validate_spin_projection(j, m_hi, "single_ion_cat");
  validate_spin_projection(j, m_lo, "single_ion_cat");
  CatState c;
  c.lambda_a = m_hi * m_hi;
  c.label_a = "m=" + fmt_m(m_hi);
  c.lambda_b = m_lo * m_lo;
  c.label_b = "m=" + fmt_m(m_lo);
  c.w_a = c.w_b = complex{kInvSqrt2, 0.0};
  c.n = 1;
  c.j = j;
  return c;
}

StateVector product_state(int n, const std::array<complex, 3>& single_amps) {
  if (n < 0) {
    throw std::invalid_argument("product_state: N must be non-negative");
  }
  double norm2 = 0.0;
  for (const complex& z : single_amps) norm2 += std::norm(z);
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "product_state: single-particle amplitudes must be normalized");
  }
  StateVector s;
  s.basis = fock_space::enumerate_basis(n);
  s.amp.resize(static_cast<size_t>(s.basis->dim()));
  // Magnitudes in the log domain so large N neither overflows the
  // multinomial factor nor underflows the amplitude powers.
  double log_mag[3];
  double arg[3];
  for (int m = 0; m < 3; ++m) {
    const double am = std::abs(single_amps[static_cast<size_t>(m)]);
    log_mag[m] = am > 0.0 ? std::log(am) : 0.0;
    arg[m] = am > 0.0 ? std::arg(single_amps[static_cast<size_t>(m)]) : 0.0;
  }
  const double lg_n = std::lgamma(n + 1.0);
  for (int i = 0; i < s.basis->dim(); ++i) {
    const Triple& t = s.basis->state(i);
    bool zero = false;
    double lm = 0.5 * lg_n;
    double ph = 0.0;
    for (int m = 0; m < 3; ++m) {
      if (t[static_cast<size_t>(m)] == 0) continue;
      if (std::abs(single_amps[static_cast<size_t>(m)]) == 0.0) {
        zero = true;
        break;
      }
      lm += t[static_cast<size_t>(m)] * log_mag[m] -
            0.5 * std::lgamma(t[static_cast<size_t>(m)] + 1.0);
      ph += t[static_cast<size_t>(m)] * arg[m];
    }
    s.amp[static_cast<size_t>(i)] =
        zero ? complex{0.0, 0.0} : std::polar(std::exp(lm), ph);
  }
  return s;
}

StateVector expand_cat(const CatState& cat) {
  if (cat.j != 1.0 || !cat.triple_a || !cat.triple_b) {
    throw std::invalid_argument(
        "expand_cat: only spin-1 cats with recorded branch triples expand to "
        "a StateVector");
  }
  StateVector s;
  s.basis = fock_space::enumerate_basis(cat.n);
  s.amp.assign(static_cast<size_t>(s.basis->dim()), complex{0.0, 0.0});
  s.amp[static_cast<size_t>(s.basis->index(*cat.triple_a))] += cat.w_a;
  s.amp[static_cast<size_t>(s.basis->index(*cat.triple_b))] += cat.w_b;
  return s;
}

}  // namespace lsvmet::states
