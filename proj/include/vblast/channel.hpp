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
#include <vector>

#include "vblast/linalg.hpp"
#include "vblast/rng.hpp"

namespace vblast {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

/// Transmit symbol. BPSK only, so a real ±1.
using Symbol = double;

/// γ₀ = 10^(dB/10).
double db_to_linear(double db);
double linear_to_db(double linear);

/// Receiver noise level.
///
/// Unit symbol power and unit-variance channel entries make the average
/// per-branch SNR γ₀ = 1/σ₀².
class NoiseParams {
 public:
  explicit NoiseParams(double sigma0_sq);
  static NoiseParams from_gamma0(double gamma0);
  static NoiseParams from_snr_db(double snr_db) { return from_gamma0(db_to_linear(snr_db)); }

  double sigma0_sq() const noexcept { return sigma0_sq_; }
  double gamma0() const noexcept { return 1.0 / sigma0_sq_; }

 private:
  double sigma0_sq_;
};

/// n receive, m transmit antennas; n ≥ m ≥ 2.
struct SystemDims {
  int n_rx = 2;
  int m_tx = 2;

  /// Throws std::invalid_argument when the invariant is violated.
  void validate() const;
};

Complex sample_complex_gaussian(RngStream& stream, double variance);

/// n×m matrix of i.i.d. CN(0, 1) entries.
ComplexMatrix sample_channel(const SystemDims& dims, RngStream& stream);

/// i.i.d. CN(0, σ₀²) entries.
ComplexVector sample_noise(std::size_t dim, const NoiseParams& params, RngStream& stream);

/// Uniform ±1.
std::vector<Symbol> sample_bpsk_symbols(std::size_t count, RngStream& stream);

/// r = H q + v.
ComplexVector transmit(const ComplexMatrix& channel, const std::vector<Symbol>& symbols,
                       const ComplexVector& noise);

}  // namespace vblast
