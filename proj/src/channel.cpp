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

#include "vblast/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vblast {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

NoiseParams::NoiseParams(double sigma0_sq) : sigma0_sq_(sigma0_sq) {
  if (!(sigma0_sq > 0.0) || !std::isfinite(sigma0_sq)) {
    throw std::invalid_argument("noise variance must be positive and finite");
  }
}

NoiseParams NoiseParams::from_gamma0(double gamma0) {
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
    throw std::invalid_argument("average SNR must be positive and finite");
  }
  return NoiseParams(1.0 / gamma0);
}

void SystemDims::validate() const {
  if (m_tx < 2 || n_rx < m_tx) {
    throw std::invalid_argument("need n_rx >= m_tx >= 2, got n_rx=" + std::to_string(n_rx) +
                                " m_tx=" + std::to_string(m_tx));
  }
}

Complex sample_complex_gaussian(RngStream& stream, double variance) {
  const auto [re, im] = stream.next_gaussian_pair();
  const double s = std::sqrt(0.5 * variance);
  return {s * re, s * im};
}

ComplexMatrix sample_channel(const SystemDims& dims, RngStream& stream) {
  dims.validate();
  ComplexMatrix h(static_cast<std::size_t>(dims.n_rx), static_cast<std::size_t>(dims.m_tx));
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t c = 0; c < h.cols(); ++c) h(r, c) = sample_complex_gaussian(stream, 1.0);
  }
  return h;
}

ComplexVector sample_noise(std::size_t dim, const NoiseParams& params, RngStream& stream) {
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = sample_complex_gaussian(stream, params.sigma0_sq());
  return v;
}

std::vector<Symbol> sample_bpsk_symbols(std::size_t count, RngStream& stream) {
  if (count == 0) throw std::invalid_argument("symbol count must be >= 1");
  std::vector<Symbol> q(count);
  for (auto& s : q) s = (stream.next_u64() >> 63) ? -1.0 : 1.0;
  return q;
}

ComplexVector transmit(const ComplexMatrix& channel, const std::vector<Symbol>& symbols,
                       const ComplexVector& noise) {
  if (symbols.size() != channel.cols() || noise.size() != channel.rows()) {
    throw linalg::DimensionMismatch("transmit: channel, symbols and noise disagree");
  }
  ComplexVector r = noise;
  for (std::size_t row = 0; row < channel.rows(); ++row) {
    for (std::size_t c = 0; c < channel.cols(); ++c) r[row] += channel(row, c) * symbols[c];
  }
  return r;
}

}  // namespace vblast
