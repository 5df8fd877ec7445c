// Copyright 2026 The vblast-lab Authors.
//
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

#include "vblast/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace vblast::analytic {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

void require_rx(int n_rx) {
  if (n_rx < 2 || n_rx > kMaxRx) {
    throw DomainError("receive antenna count must be in [2, " + std::to_string(kMaxRx) +
                      "], got " + std::to_string(n_rx));
  }
}

void require_order(int n) {
  if (n < 1 || n > 2 * kMaxRx) {
    throw DomainError("MRC order must be >= 1, got " + std::to_string(n));
  }
}

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw DomainError(std::string(what) + " must be >= 0");
}

void require_step(int step) {
  if (step != 1 && step != 2) throw DomainError("step must be 1 or 2");
}

cpp_int factorial(int k) {
  cpp_int f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// (2i−1)!!, with (−1)!! = 1.
cpp_int double_factorial_odd(int i) {
  cpp_int f = 1;
  for (int k = 2 * i - 1; k > 1; k -= 2) f *= k;
  return f;
}

cpp_int pow2(int k) { return cpp_int(1) << k; }

CoefficientSeries to_series(int first, const std::vector<cpp_rational>& exact) {
  CoefficientSeries s;
  s.first = first;
  s.values.reserve(exact.size());
  for (const auto& v : exact) s.values.push_back(v.convert_to<double>());
  return s;
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

// e^{−2x}·Σ c_i (factor·x)^i over the series range, computed term-wise in
// log space so that large x neither overflows nor produces 0·inf.
double damped_power_series(const CoefficientSeries& c, double factor, double x) {
  if (x == 0.0) return c.first == 0 ? c.values.front() : 0.0;
  const double log_fx = std::log(factor * x);
  double sum = 0.0;
  for (int i = c.first; i <= c.last(); ++i) {
    sum += c(i) * std::exp(i * log_fx - 2.0 * x);
  }
  return sum;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Σ_i c_i·r^i for r ∈ (0, 1].
double power_sum(const CoefficientSeries& c, double r) {
  double sum = 0.0;
  for (int i = c.first; i <= c.last(); ++i) sum += c(i) * std::pow(r, i);
  return sum;
}

// --- base-modulation forms (BFSK, BPSK) evaluated at their own γ₀ ----------

double bfsk_step1(const OrderedSnrCoefficients& c, double g) {
  const int n = c.n_rx;
  const double delta = g / (4.0 + g) * power_sum(c.alpha, 4.0 / (4.0 + g));
  return 2.0 * ber_mrc_bfsk(n - 1, g) - ber_mrc_bfsk(n - 1, 0.5 * g) + delta;
}

double bfsk_step2(const OrderedSnrCoefficients& c, double g) {
  const double delta = 0.5 * g / (4.0 + g) * power_sum(c.beta, 4.0 / (4.0 + g));
  return ber_mrc_bfsk(c.n_rx, 0.5 * g) - delta;
}

double bpsk_step1(const OrderedSnrCoefficients& c, double g) {
  const int n = c.n_rx;
  const double delta = 0.5 * std::sqrt(g / (2.0 + g)) * power_sum(c.sigma, 1.0 / (2.0 + g));
  return 2.0 * ber_mrc_bpsk(n - 1, g) - ber_mrc_bpsk(n - 1, 0.5 * g) + delta;
}

double bpsk_step2(const OrderedSnrCoefficients& c, double g) {
  const double delta = 0.5 * std::sqrt(g / (2.0 + g)) * power_sum(c.d, 1.0 / (2.0 + g));
  return ber_mrc_bpsk(c.n_rx, 0.5 * g) - delta;
}

double bfsk_asymptote(int step, int n, double g) {
  if (step == 1) return 0.5 * std::pow(1.0 / g, n - 1);
  return std::pow(2.0 / g, n);
}

double bpsk_asymptote(int step, int n, double g) {
  if (step == 1) return binomial(2 * n - 3, n - 1) / std::pow(8.0 * g, n - 1);
  return 2.0 * binomial(2 * n - 1, n) / std::pow(4.0 * g, n);
}

// Maps a generic (α, β) modulation onto the base-modulation form:
//   coherent βQ(√(αγ))  → β·f_BPSK(αγ₀/2)
//   noncoherent βe^{−αγ} → 2β·f_BFSK(2αγ₀)
template <typename CoherentFn, typename NoncoherentFn>
double map_modulation(const ModulationSpec& mod, double gamma0, CoherentFn coherent,
                      NoncoherentFn noncoherent) {
  if (mod.family == ModulationFamily::coherent) {
    return mod.beta * coherent(mod.alpha * gamma0 / 2.0);
  }
  return 2.0 * mod.beta * noncoherent(2.0 * mod.alpha * gamma0);
}

}  // namespace

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double CoefficientSeries::operator()(int i) const noexcept {
  if (values.empty() || i < first || i > last()) return 0.0;
  return values[static_cast<std::size_t>(i - first)];
}

OrderedSnrCoefficients coefficients(int n_rx) {
  require_rx(n_rx);
  const int n = n_rx;

  // a_i = (n−1)/(i−n+1)! · Σ_{j=i+1}^{2n−2} (j−n)!/2^j · Σ_{k=j−n+1}^{n−1} 1/(k!(j−k)!)
  std::vector<cpp_rational> a;
  for (int i = n - 1; i <= 2 * n - 3; ++i) {
    cpp_rational outer = 0;
    for (int j = i + 1; j <= 2 * n - 2; ++j) {
      cpp_rational inner = 0;
      for (int k = j - n + 1; k <= n - 1; ++k) {
        inner += cpp_rational(cpp_int(1), factorial(k) * factorial(j - k));
      }
      outer += cpp_rational(factorial(j - n), pow2(j)) * inner;
    }
    a.push_back(cpp_rational(cpp_int(n - 1), factorial(i - n + 1)) * outer);
  }

  // b_k = Σ_{i=k−n+1}^{n−1} 1/(i!(k−i)!)
  std::vector<cpp_rational> b;
  for (int k = n; k <= 2 * n - 2; ++k) {
    cpp_rational s = 0;
    for (int i = k - n + 1; i <= n - 1; ++i) {
      s += cpp_rational(cpp_int(1), factorial(i) * factorial(k - i));
    }
    b.push_back(s);
  }

  std::vector<cpp_rational> alpha, sigma, beta, d;
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    const int i = n - 1 + static_cast<int>(idx);
    alpha.push_back(cpp_rational(factorial(i), cpp_int(2)) * a[idx]);
    sigma.push_back(cpp_rational(double_factorial_odd(i)) * a[idx]);
  }
  for (std::size_t idx = 0; idx < b.size(); ++idx) {
    const int i = n + static_cast<int>(idx);
    beta.push_back(cpp_rational(factorial(i), pow2(i)) * b[idx]);
    d.push_back(cpp_rational(double_factorial_odd(i), pow2(i)) * b[idx]);
  }

  OrderedSnrCoefficients c;
  c.n_rx = n;
  c.a = to_series(n - 1, a);
  c.b = to_series(n, b);
  c.alpha = to_series(n - 1, alpha);
  c.beta = to_series(n, beta);
  c.sigma = to_series(n - 1, sigma);
  c.d = to_series(n, d);
  return c;
}

const OrderedSnrCoefficients& shared_coefficients(int n_rx) {
  require_rx(n_rx);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const OrderedSnrCoefficients>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[n_rx];
  if (!slot) slot = std::make_unique<const OrderedSnrCoefficients>(coefficients(n_rx));
  return *slot;
}

// ---------------------------------------------------------------------------
// Outage

double mrc_outage_cdf(int n, double x) {
  require_order(n);
  require_nonnegative(x, "normalized SNR");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;

  if (x < n) {
    // Lower tail e^{−x}·Σ_{k≥n} x^k/k!: positive terms, no cancellation.
    double term = std::exp(-x);
    for (int k = 1; k <= n; ++k) term *= x / k;
    double sum = 0.0;
    for (int k = n; term > 1e-18 * sum || k < n + 2; ++k) {
      sum += term;
      term *= x / (k + 1);
    }
    return clamp_probability(sum);
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < n; ++k) {
    term *= x / k;
    sum += term;
  }
  return clamp_probability(1.0 - std::exp(-x) * sum);
}

double outage_cdf_step1(const OrderedSnrCoefficients& c, double x) {
  require_rx(c.n_rx);
  require_nonnegative(x, "normalized SNR");
  if (std::isinf(x)) return 1.0;
  const int n = c.n_rx;
  const double f = 2.0 * mrc_outage_cdf(n - 1, x) - mrc_outage_cdf(n - 1, 2.0 * x) +
                   damped_power_series(c.a, 2.0, x);
  return clamp_probability(f);
}

double outage_cdf_step1(int n_rx, double x) {
  return outage_cdf_step1(shared_coefficients(n_rx), x);
}

double outage_cdf_step2(int n_rx, double x) {
  require_rx(n_rx);
  const double f = mrc_outage_cdf(n_rx, x);
  return clamp_probability(f * (2.0 - f));
}

double outage_cdf_step2_series(const OrderedSnrCoefficients& c, double x) {
  require_rx(c.n_rx);
  require_nonnegative(x, "normalized SNR");
  if (std::isinf(x)) return 1.0;
  const double f = mrc_outage_cdf(c.n_rx, 2.0 * x) - damped_power_series(c.b, 1.0, x);
  return clamp_probability(f);
}

double outage_cdf_step2_series(int n_rx, double x) {
  return outage_cdf_step2_series(shared_coefficients(n_rx), x);
}

double outage_cdf(int step, int n_rx, double x) {
  require_step(step);
  return step == 1 ? outage_cdf_step1(n_rx, x) : outage_cdf_step2(n_rx, x);
}

double snr_pdf(int step, int n_rx, double x) {
  require_step(step);
  if (!(x > 0.0) || std::isinf(x)) throw DomainError("density needs a finite x > 0");
  const double h = std::max(1e-6, 1e-6 * x);
  if (x - h < 0.0) {
    return (outage_cdf(step, n_rx, x + h) - outage_cdf(step, n_rx, x)) / h;
  }
  return (outage_cdf(step, n_rx, x + h) - outage_cdf(step, n_rx, x - h)) / (2.0 * h);
}

// ---------------------------------------------------------------------------
// Average BER

double ber_mrc_bfsk(int n, double gamma0) {
  require_order(n);
  require_nonnegative(gamma0, "average SNR");
  return 0.5 * std::pow(2.0 / (2.0 + gamma0), n);
}

double ber_mrc_bpsk(int n, double gamma0) {
  require_order(n);
  require_nonnegative(gamma0, "average SNR");
  if (std::isinf(gamma0)) return 0.0;
  const double mu = std::sqrt(gamma0 / (1.0 + gamma0));
  // 1 − μ = (1 − μ²)/(1 + μ) = 1/((1+γ₀)(1+μ)).
  const double half_minus = 0.5 / ((1.0 + gamma0) * (1.0 + mu));
  const double half_plus = 0.5 * (1.0 + mu);
  double sum = 0.0;
  double weight = 1.0;
  double binom = 1.0;
  for (int k = 0; k < n; ++k) {
    sum += binom * weight;
    binom = binom * (n + k) / (k + 1);  // C(n−1+k+1, k+1)
    weight *= half_plus;
  }
  return std::pow(half_minus, n) * sum;
}

double ber_mrc(const ModulationSpec& mod, int n, double gamma0) {
  require_nonnegative(gamma0, "average SNR");
  return map_modulation(
      mod, gamma0, [n](double g) { return ber_mrc_bpsk(n, g); },
      [n](double g) { return ber_mrc_bfsk(n, g); });
}

double ber_step1(const ModulationSpec& mod, const OrderedSnrCoefficients& c, double gamma0) {
  require_rx(c.n_rx);
  require_nonnegative(gamma0, "average SNR");
  return map_modulation(
      mod, gamma0, [&c](double g) { return bpsk_step1(c, g); },
      [&c](double g) { return bfsk_step1(c, g); });
}

double ber_step1(const ModulationSpec& mod, int n_rx, double gamma0) {
  return ber_step1(mod, shared_coefficients(n_rx), gamma0);
}

double ber_step2(const ModulationSpec& mod, const OrderedSnrCoefficients& c, double gamma0) {
  require_rx(c.n_rx);
  require_nonnegative(gamma0, "average SNR");
  return map_modulation(
      mod, gamma0, [&c](double g) { return bpsk_step2(c, g); },
      [&c](double g) { return bfsk_step2(c, g); });
}

double ber_step2(const ModulationSpec& mod, int n_rx, double gamma0) {
  return ber_step2(mod, shared_coefficients(n_rx), gamma0);
}

double ber_step(int step, const ModulationSpec& mod, int n_rx, double gamma0) {
  require_step(step);
  return step == 1 ? ber_step1(mod, n_rx, gamma0) : ber_step2(mod, n_rx, gamma0);
}

double ber_asymptote(int step, const ModulationSpec& mod, int n_rx, double gamma0) {
  require_step(step);
  require_rx(n_rx);
  if (!(gamma0 > 0.0)) throw DomainError("asymptote needs average SNR > 0");
  return map_modulation(
      mod, gamma0, [&](double g) { return bpsk_asymptote(step, n_rx, g); },
      [&](double g) { return bfsk_asymptote(step, n_rx, g); });
}

double bler(const ModulationSpec& mod, const OrderedSnrCoefficients& c, double gamma0) {
  const double p1 = ber_step1(mod, c, gamma0);
  const double p2 = ber_step2(mod, c, gamma0);
  // 1 − (1−p1)(1−p2) without losing p1·p2-sized terms to cancellation.
  return p1 + p2 - p1 * p2;
}

double bler(const ModulationSpec& mod, int n_rx, double gamma0) {
  return bler(mod, shared_coefficients(n_rx), gamma0);
}

double bpsk_2x2_step2_alt_denominator(double gamma0) {
  require_nonnegative(gamma0, "average SNR");
  const double g = gamma0;
  return 0.5 - 0.5 * std::sqrt(g / (2.0 + g)) *
                   (1.0 + 1.0 / (2.0 + g) + 3.0 / (4.0 * (4.0 + g) * (4.0 + g)));
}

PerformancePoint performance_point(const ModulationSpec& mod, int n_rx, double gamma0) {
  const auto& c = shared_coefficients(n_rx);
  PerformancePoint p;
  p.gamma0 = gamma0;
  p.pe_step1 = ber_step1(mod, c, gamma0);
  p.pe_step2 = ber_step2(mod, c, gamma0);
  p.bler = p.pe_step1 + p.pe_step2 - p.pe_step1 * p.pe_step2;
  if (gamma0 > 0.0) {
    p.pe_step1_asymptote = ber_asymptote(1, mod, n_rx, gamma0);
    p.pe_step2_asymptote = ber_asymptote(2, mod, n_rx, gamma0);
  } else {
    p.pe_step1_asymptote = std::numeric_limits<double>::infinity();
    p.pe_step2_asymptote = std::numeric_limits<double>::infinity();
  }
  return p;
}

}  // namespace vblast::analytic
