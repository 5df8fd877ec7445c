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

#pragma once

#include <stdexcept>
#include <vector>

#include "vblast/modulation.hpp"

/// Closed-form performance of the n×2 ordered V-BLAST detector with ZF-MRC
/// combining in i.i.d. Rayleigh fading.
///
/// Step 1 is the first detected stream (one interferer nulled, diversity
/// n − 1); step 2 is the second (no interferers left, diversity n). SNR
/// arguments named `x` are normalized, x = γ/γ₀; `gamma0` is the linear
/// average per-branch SNR.
///
/// Average BERs follow from integrating the conditional BER against the
/// ordered-SNR distributions, which reduce to finite sums over MRC terms plus
/// correction series with coefficient families a_i, b_k. All functions are
/// pure; coefficient tables are built once per n and shared read-only.
namespace vblast::analytic {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Largest supported receive-antenna count (keeps double-factorial products
/// inside double range).
inline constexpr int kMaxRx = 32;

/// Gaussian tail Q(x) = ½·erfc(x/√2).
double q_function(double x);

/// Coefficients indexed over a contiguous integer range [first, last].
struct CoefficientSeries {
  int first = 0;
  std::vector<double> values;

  int last() const noexcept { return first + static_cast<int>(values.size()) - 1; }
  /// Value at index i; zero outside the range.
  double operator()(int i) const noexcept;
};

/// Coefficient families of the ordered-SNR CDFs and the BER series derived
/// from them. Built in exact rational arithmetic, then rounded once.
///
///   a_i,  i ∈ [n−1, 2n−3]   step-1 CDF correction
///   b_k,  k ∈ [n, 2n−2]     step-2 CDF series form
///   α_i = i!·a_i/2          BFSK step 1
///   β_i = i!·b_i/2^i        BFSK step 2
///   σ_i = (2i−1)!!·a_i      BPSK step 1
///   d_i = (2i−1)!!·b_i/2^i  BPSK step 2
struct OrderedSnrCoefficients {
  int n_rx = 0;
  CoefficientSeries a;
  CoefficientSeries b;
  CoefficientSeries alpha;
  CoefficientSeries beta;
  CoefficientSeries sigma;
  CoefficientSeries d;
};

/// Throws DomainError for n_rx < 2 or n_rx > kMaxRx.
OrderedSnrCoefficients coefficients(int n_rx);

/// Cached, immutable table for n_rx. Thread-safe.
const OrderedSnrCoefficients& shared_coefficients(int n_rx);

// ---------------------------------------------------------------------------
// Outage (CDF of γ/γ₀)

/// n-th order MRC: 1 − e^{−x}·Σ_{k<n} x^k/k!  (n ≥ 1).
double mrc_outage_cdf(int n, double x);

/// F₁(x) = 2F_MRC^(n−1)(x) − F_MRC^(n−1)(2x) + e^{−2x}·Σ a_i (2x)^i.
double outage_cdf_step1(int n_rx, double x);
double outage_cdf_step1(const OrderedSnrCoefficients& c, double x);

/// F₂(x) = F_MRC^(n)(x)·[2 − F_MRC^(n)(x)], the CDF of the smaller of two
/// independent n-branch channel gains.
double outage_cdf_step2(int n_rx, double x);

/// Series form of F₂: F_MRC^(n)(2x) − e^{−2x}·Σ b_k x^k. Equal to
/// outage_cdf_step2; kept separate to cross-check the b_k table.
double outage_cdf_step2_series(int n_rx, double x);
double outage_cdf_step2_series(const OrderedSnrCoefficients& c, double x);

/// F_step(x) for step ∈ {1, 2}.
double outage_cdf(int step, int n_rx, double x);

/// Density of γ/γ₀ at step ∈ {1, 2} (divide by γ₀ for the density of γ).
/// Central difference of the CDF with h = max(1e−6, 1e−6·x).
double snr_pdf(int step, int n_rx, double x);

// ---------------------------------------------------------------------------
// Average BER

/// ½·(2/(2+γ₀))^n.
double ber_mrc_bfsk(int n, double gamma0);
/// ½ − ½·√(γ₀/(1+γ₀))·Σ_{i<n} C(2i,i)/(4^i(1+γ₀)^i), evaluated in the
/// equivalent all-positive form ((1−μ)/2)^n·Σ C(n−1+k,k)((1+μ)/2)^k.
double ber_mrc_bpsk(int n, double gamma0);
/// n-branch MRC average BER for any modulation via the (α, β) mapping.
double ber_mrc(const ModulationSpec& mod, int n, double gamma0);

/// Average BER of the first detected stream.
double ber_step1(const ModulationSpec& mod, int n_rx, double gamma0);
double ber_step1(const ModulationSpec& mod, const OrderedSnrCoefficients& c, double gamma0);

/// Average BER of the second detected stream (genie cancellation).
double ber_step2(const ModulationSpec& mod, int n_rx, double gamma0);
double ber_step2(const ModulationSpec& mod, const OrderedSnrCoefficients& c, double gamma0);

double ber_step(int step, const ModulationSpec& mod, int n_rx, double gamma0);

/// High-SNR asymptote of ber_step (gamma0 > 0).
///   BFSK:  step 1 ½(1/γ₀)^{n−1},          step 2 (2/γ₀)^n
///   BPSK:  step 1 C(2n−3,n−1)/(8γ₀)^{n−1}, step 2 2C(2n−1,n)/(4γ₀)^n
double ber_asymptote(int step, const ModulationSpec& mod, int n_rx, double gamma0);

/// Block error rate 1 − (1 − P̄₁)(1 − P̄₂).
double bler(const ModulationSpec& mod, int n_rx, double gamma0);
double bler(const ModulationSpec& mod, const OrderedSnrCoefficients& c, double gamma0);

/// 2×2 BPSK step-2 BER with (4+γ₀)² in place of (2+γ₀)² in the last term.
/// Diagnostics only: this variant disagrees with direct numerical
/// integration and with the general-n formula.
double bpsk_2x2_step2_alt_denominator(double gamma0);

struct PerformancePoint {
  double gamma0 = 0.0;
  double pe_step1 = 0.0;
  double pe_step2 = 0.0;
  double bler = 0.0;
  double pe_step1_asymptote = 0.0;
  double pe_step2_asymptote = 0.0;
};

/// All quantities at one γ₀. Asymptotes are +inf at γ₀ = 0.
PerformancePoint performance_point(const ModulationSpec& mod, int n_rx, double gamma0);

}  // namespace vblast::analytic
