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

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "vblast/channel.hpp"
#include "vblast/detector.hpp"
#include "vblast/modulation.hpp"

/// Monte Carlo estimation around the detector.
///
/// Trials are cut into fixed-size blocks. Block b of SNR point p draws from
/// RngStream(seed, p·2³² + b), and per-block partial sums are merged in block
/// order, so every estimate is a deterministic function of (config, seed)
/// whatever the worker count. Within a trial the draw order is channel,
/// symbols, noise; estimators that skip symbols or noise still use the same
/// channel for the same trial index.
namespace vblast::mc {

enum class Estimator { symbol_level, semi_analytic };

std::string_view to_string(Estimator e) noexcept;
/// Accepts "symbol" / "semianalytic".
Estimator parse_estimator(std::string_view text);

inline constexpr std::uint64_t kTrialsPerBlock = 4096;
/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

struct SimConfig {
  SystemDims dims{2, 2};
  std::vector<double> gamma0_db{10.0};
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  ModulationSpec modulation = ModulationSpec::bpsk();
  detector::CancellationMode mode = detector::CancellationMode::genie;
  Estimator estimator = Estimator::symbol_level;
  detector::OrderingMode ordering = detector::OrderingMode::optimal;
  /// Threads used; never changes results.
  unsigned workers = 1;

  /// Throws std::invalid_argument on: trials = 0, m_tx ≠ 2, empty/unsorted/
  /// non-finite dB grid, workers = 0, symbol-level with a non-BPSK modulation.
  void validate() const;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct RateEstimate {
  double value = 0.0;
  Interval ci;
  double std_error = 0.0;
};

struct SimPoint {
  double gamma0_db = 0.0;
  double gamma0 = 0.0;
  /// Trials that produced a result (requested minus skipped).
  std::uint64_t trials = 0;
  /// Symbol-level only; zero for the semi-analytic estimator.
  std::array<std::uint64_t, 2> step_errors{};
  std::uint64_t block_errors = 0;
  std::array<RateEstimate, 2> ber;
  RateEstimate bler;
  /// Degenerate channels skipped.
  std::uint64_t skipped = 0;
};

struct SimResult {
  SimConfig config;
  std::vector<SimPoint> points;
};

/// Full chain per trial: H, q, v, detection; Wilson 95% intervals.
/// Per-step errors are counted in the configured cancellation mode.
SimResult run_symbol_level(const SimConfig& config);

/// Channel-only trials averaging the conditional BER P_e(γ_i) of the ordered
/// per-step SNRs; BLER as the mean of 1 − (1 − P_e(γ₁))(1 − P_e(γ₂)).
/// Normal-approximation 95% intervals.
SimResult run_semianalytic_ber(const SimConfig& config);

/// Dispatches on config.estimator.
SimResult run_simulation(const SimConfig& config);

/// Block-error indicator of every trial at one SNR point, in trial order.
std::vector<std::uint8_t> block_error_indicators(const SimConfig& config, std::size_t point_index);

/// γ_i/γ₀ for every trial (trial order), per step; skipped trials omitted.
struct SnrSamples {
  std::array<std::vector<double>, 2> normalized;
  std::uint64_t skipped = 0;
};
SnrSamples sample_normalized_snrs(const SimConfig& config);

struct SnrCdfEstimate {
  std::vector<double> grid;
  /// Fraction of trials with γ_i/γ₀ < x, per step and grid point.
  std::array<std::vector<double>, 2> cdf;
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;
};
/// `grid` must be sorted and nonnegative.
SnrCdfEstimate estimate_snr_cdf(const SimConfig& config, std::span<const double> grid);

enum class CombiningRule { zf_mrc, equal_gain };

/// Sample moments of the after-combining noises ξ₁, ξ₂ at the first SNR point.
struct NoiseCorrelation {
  Complex cross{0.0, 0.0};  ///< mean of ξ₁*·ξ₂
  double cross_std_error = 0.0;
  std::array<double, 2> mean_power{};  ///< mean of |ξ_i|²
  double sigma0_sq = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;
};
NoiseCorrelation estimate_noise_crosscorr(const SimConfig& config,
                                          CombiningRule rule = CombiningRule::zf_mrc);

/// Per-trial invariant checks over the first SNR point. Each trial is
/// detected in both cancellation modes from the same draws.
struct TraceAudit {
  std::uint64_t trials = 0;
  std::uint64_t skipped = 0;
  /// max |γ_i − (n−m+i)γ′_i| / γ_i, with γ_i = |w⁺Ph|²/(|w|²σ₀²) and
  /// γ′_i = |Ph|²/(tr(P)·σ₀²), P built from the remaining interferers.
  double max_snr_identity_error = 0.0;
  /// max |w₁⁺w₂|
  double max_weight_overlap = 0.0;
  /// max ||w| − 1|
  double max_weight_norm_error = 0.0;
  /// Trials whose block-error indicator differs between the two modes.
  std::uint64_t block_indicator_mismatches = 0;
  /// Trials with a correct first decision whose traces differ anyway.
  std::uint64_t correct_first_trace_mismatches = 0;
  std::array<std::uint64_t, 2> genie_step_errors{};
  std::array<std::uint64_t, 2> propagate_step_errors{};
  std::uint64_t block_errors = 0;
};
TraceAudit audit_traces(const SimConfig& config);

// ---------------------------------------------------------------------------
// Statistics

/// max_k |empirical[k] − analytic[k]| over matched grids; throws
/// std::invalid_argument when the lengths differ or are zero.
double ks_statistic(std::span<const double> empirical, std::span<const double> analytic);

/// One-sample Kolmogorov–Smirnov distance sup_x |F_N(x) − F(x)|.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Wilson score 95% interval. Requires errors ≤ trials and trials ≥ 1.
Interval wilson_interval(std::uint64_t errors, std::uint64_t trials);

/// Count-based rate with its Wilson interval and binomial standard error.
RateEstimate binomial_rate(std::uint64_t errors, std::uint64_t trials);

/// Sample mean with a normal-approximation 95% interval clamped to [0, 1].
RateEstimate mean_rate(double sum, double sum_sq, std::uint64_t count);

}  // namespace vblast::mc
