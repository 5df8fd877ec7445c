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

#include "vblast/detector.hpp"

#include <algorithm>
#include <optional>
#include <string>

namespace vblast::detector {
namespace {

// A projected column below this fraction of the strongest column's power
// means the channel columns are (numerically) dependent.
constexpr double kDegenerateRelative = 1e-14;

std::vector<ComplexVector> columns_except(const std::vector<ComplexVector>& cols,
                                          const std::vector<std::size_t>& remaining,
                                          std::size_t skip) {
  std::vector<ComplexVector> out;
  out.reserve(remaining.size());
  for (auto idx : remaining) {
    if (idx != skip) out.push_back(cols[idx]);
  }
  return out;
}

ComplexVector residual_or_throw(const ComplexVector& h, std::span<const ComplexVector> interferers) {
  try {
    return linalg::orthogonal_residual(h, interferers);
  } catch (const linalg::SingularMatrix& e) {
    throw DegenerateChannel(std::string("dependent channel columns: ") + e.what());
  }
}

// Best remaining stream by after-projection power; ties toward lower index.
OrderedColumn choose_next(const std::vector<ComplexVector>& cols,
                          const std::vector<std::size_t>& remaining, OrderingMode ordering) {
  double column_scale = 0.0;
  for (auto idx : remaining) column_scale = std::max(column_scale, cols[idx].norm_sq());

  std::optional<OrderedColumn> best;
  double best_power = -1.0;
  for (auto idx : remaining) {
    const auto interferers = columns_except(cols, remaining, idx);
    auto h_perp = residual_or_throw(cols[idx], interferers);
    const double power = h_perp.norm_sq();
    if (power > best_power) {
      best_power = power;
      best.emplace(OrderedColumn{idx, std::move(h_perp), {}});
    }
    if (ordering == OrderingMode::fixed) break;
  }
  if (!(best_power > kDegenerateRelative * column_scale)) {
    throw DegenerateChannel("projected channel column vanishes");
  }
  for (auto idx : remaining) {
    if (idx != best->stream_index) best->interferers.push_back(idx);
  }
  return std::move(*best);
}

}  // namespace

std::string_view to_string(CancellationMode mode) noexcept {
  return mode == CancellationMode::genie ? "genie" : "propagate";
}

CancellationMode parse_cancellation_mode(std::string_view text) {
  if (text == "genie") return CancellationMode::genie;
  if (text == "propagate") return CancellationMode::propagate;
  throw std::invalid_argument("unknown cancellation mode '" + std::string(text) + "'");
}

bool DetectionTrace::symbol_error(std::size_t step, const std::vector<Symbol>& truth) const {
  const auto& s = steps.at(step);
  return s.decision != truth.at(s.stream_index);
}

bool DetectionTrace::block_error(const std::vector<Symbol>& truth) const {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (symbol_error(i, truth)) return true;
  }
  return false;
}

ComplexVector zf_mrc_weight(const ComplexVector& h_perp) {
  const double norm = h_perp.norm();
  if (!(norm > 0.0)) throw DegenerateChannel("ZF-MRC weight of a zero vector");
  return Complex{1.0 / norm, 0.0} * h_perp;
}

ComplexVector equal_gain_weight(std::size_t n_rx, std::span<const ComplexVector> interferers) {
  const ComplexVector ones(std::vector<Complex>(n_rx, Complex{1.0, 0.0}));
  return zf_mrc_weight(residual_or_throw(ones, interferers));
}

double after_projection_snr(const ComplexVector& h_perp, const NoiseParams& params) {
  return h_perp.norm_sq() / params.sigma0_sq();
}

double powerwise_snr(const ComplexVector& h_perp, const NoiseParams& params,
                     const SystemDims& dims, int step) {
  if (step < 1 || step > dims.m_tx) {
    throw std::invalid_argument("step must be in [1, m_tx]");
  }
  const int rank = dims.n_rx - dims.m_tx + step;
  return h_perp.norm_sq() / (rank * params.sigma0_sq());
}

std::vector<OrderedColumn> ordered_projections(const ComplexMatrix& channel,
                                               OrderingMode ordering) {
  const auto cols = channel.columns();
  std::vector<std::size_t> remaining(cols.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

  std::vector<OrderedColumn> out;
  out.reserve(cols.size());
  while (!remaining.empty()) {
    auto pick = choose_next(cols, remaining, ordering);
    std::erase(remaining, pick.stream_index);
    out.push_back(std::move(pick));
  }
  return out;
}

std::vector<std::size_t> order_streams(const ComplexMatrix& channel, const NoiseParams&) {
  std::vector<std::size_t> order;
  for (const auto& step : ordered_projections(channel)) order.push_back(step.stream_index);
  return order;
}

Complex after_combining_noise(const ComplexVector& weight, const ComplexVector& noise) {
  return linalg::inner(weight, noise);
}

Symbol decide_bpsk(Complex statistic) noexcept { return statistic.real() < 0.0 ? -1.0 : 1.0; }

DetectionTrace detect(const ComplexMatrix& channel, const ComplexVector& received,
                      const std::vector<Symbol>& true_symbols, const NoiseParams& params,
                      const ModulationSpec& modulation, CancellationMode mode,
                      OrderingMode ordering) {
  const SystemDims dims{static_cast<int>(channel.rows()), static_cast<int>(channel.cols())};
  dims.validate();
  if (received.size() != channel.rows() || true_symbols.size() != channel.cols()) {
    throw linalg::DimensionMismatch("detect: channel, received vector and symbols disagree");
  }
  if (!modulation.is_bpsk()) {
    throw std::invalid_argument("symbol-level detection supports BPSK only");
  }

  const auto cols = channel.columns();
  // r − Hq, for the after-combining noise.
  ComplexVector noise = received;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    noise -= Complex{true_symbols[c], 0.0} * cols[c];
  }

  DetectionTrace trace;
  trace.mode = mode;
  ComplexVector r = received;
  int step = 0;
  for (auto& pick : ordered_projections(channel, ordering)) {
    ++step;
    DetectionStep s;
    s.stream_index = pick.stream_index;
    s.weight = zf_mrc_weight(pick.h_perp);
    // w lies in the range of the Hermitian projector, so w⁺(P r) = w⁺r.
    s.decision = decide_bpsk(linalg::inner(s.weight, r));
    s.snr_opt = after_projection_snr(pick.h_perp, params);
    s.snr_powerwise = powerwise_snr(pick.h_perp, params, dims, step);
    s.after_combining_noise = after_combining_noise(s.weight, noise);
    s.h_perp = std::move(pick.h_perp);

    const Symbol cancel = mode == CancellationMode::genie ? true_symbols[s.stream_index] : s.decision;
    r -= Complex{cancel, 0.0} * cols[s.stream_index];

    trace.order.push_back(s.stream_index);
    trace.steps.push_back(std::move(s));
  }
  return trace;
}

}  // namespace vblast::detector
