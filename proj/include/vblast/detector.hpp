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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "vblast/channel.hpp"
#include "vblast/modulation.hpp"

/// Ordered successive interference cancellation (V-BLAST) with ZF-MRC
/// combining.
///
/// At each step the not-yet-detected stream with the largest after-projection
/// SNR is chosen, its channel column is projected away from the remaining
/// interferers (h⊥ = P·h), combined with w = h⊥/|h⊥|, decided, and its
/// contribution subtracted from the received vector. Steps are numbered from
/// 1 in detection order; step i has m − i interferers left, so the projector
/// has rank n − m + i.
namespace vblast::detector {

class DegenerateChannel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cancellation of already-detected streams: with the true symbols (no error
/// propagation) or with the decisions.
enum class CancellationMode { genie, propagate };

/// Optimal ordering, or detect in stream-index order (diagnostics only).
enum class OrderingMode { optimal, fixed };

std::string_view to_string(CancellationMode mode) noexcept;
/// Accepts "genie" / "propagate"; throws std::invalid_argument otherwise.
CancellationMode parse_cancellation_mode(std::string_view text);

struct DetectionStep {
  std::size_t stream_index = 0;
  ComplexVector h_perp{1};
  ComplexVector weight{1};
  /// γ_i = |h⊥|²/σ₀², the SNR after ZF-MRC combining.
  double snr_opt = 0.0;
  /// γ′_i = |h⊥|²/((n − m + i)σ₀²), total after-projection signal over noise power.
  double snr_powerwise = 0.0;
  Symbol decision = 0.0;
  /// ξ_i = w⁺v.
  Complex after_combining_noise{0.0, 0.0};
};

struct DetectionTrace {
  std::vector<std::size_t> order;
  std::vector<DetectionStep> steps;
  CancellationMode mode = CancellationMode::genie;

  /// Whether the decision at `step` (0-based position in `steps`) is wrong.
  bool symbol_error(std::size_t step, const std::vector<Symbol>& truth) const;
  /// At least one stream decided wrongly.
  bool block_error(const std::vector<Symbol>& truth) const;
};

/// w = h⊥/|h⊥|. Throws DegenerateChannel for a zero vector.
ComplexVector zf_mrc_weight(const ComplexVector& h_perp);

/// P·1/|P·1| for the projector orthogonal to `interferers`: unit-gain combining
/// of the projected branches. Only used to show that the after-combining
/// noises are correlated without ZF-MRC weights.
ComplexVector equal_gain_weight(std::size_t n_rx, std::span<const ComplexVector> interferers);

/// |h⊥|²/σ₀².
double after_projection_snr(const ComplexVector& h_perp, const NoiseParams& params);

/// |h⊥|²/((n − m + step)·σ₀²), step ∈ [1, m].
double powerwise_snr(const ComplexVector& h_perp, const NoiseParams& params,
                     const SystemDims& dims, int step);

/// One detection step's stream and its projected channel column.
struct OrderedColumn {
  std::size_t stream_index = 0;
  ComplexVector h_perp{1};
  /// The columns still undetected at this step, excluding this one.
  std::vector<std::size_t> interferers;
};

/// Detection order with the projected columns. With optimal ordering each step
/// takes the remaining stream with the largest |P h|² against the other
/// remaining columns; ties go to the lower index. Depends on the channel
/// only. Throws DegenerateChannel when the columns are linearly dependent.
std::vector<OrderedColumn> ordered_projections(const ComplexMatrix& channel,
                                               OrderingMode ordering = OrderingMode::optimal);

/// Stream indices in optimal detection order (the SNR ranking is invariant to
/// the common noise level, so `params` does not affect the result).
std::vector<std::size_t> order_streams(const ComplexMatrix& channel, const NoiseParams& params);

/// w⁺v.
Complex after_combining_noise(const ComplexVector& weight, const ComplexVector& noise);

/// Maximum-likelihood BPSK decision on a combined statistic; ties go to +1.
Symbol decide_bpsk(Complex statistic) noexcept;

/// Runs the full chain on one received vector r = Hq + v.
///
/// `true_symbols` drive genie cancellation and the after-combining noise
/// bookkeeping (ξ_i = w⁺(r − Hq)); decisions never look at them. Only BPSK
/// supports symbol-level detection.
DetectionTrace detect(const ComplexMatrix& channel, const ComplexVector& received,
                      const std::vector<Symbol>& true_symbols, const NoiseParams& params,
                      const ModulationSpec& modulation, CancellationMode mode,
                      OrderingMode ordering = OrderingMode::optimal);

}  // namespace vblast::detector
