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

#include <string>
#include <string_view>

namespace vblast {

enum class ModulationFamily { coherent, noncoherent };

/// Binary modulation described by its conditional BER.
///
///   coherent:     P_e(γ) = β·Q(√(αγ))
///   noncoherent:  P_e(γ) = β·exp(−αγ)
///
/// BPSK is coherent (2, 1); non-coherent orthogonal BFSK is (1/2, 1/2).
struct ModulationSpec {
  ModulationFamily family = ModulationFamily::coherent;
  double alpha = 2.0;
  double beta = 1.0;
  std::string name = "bpsk";

  static ModulationSpec bpsk();
  static ModulationSpec bfsk();
  static ModulationSpec coherent(double alpha, double beta);
  static ModulationSpec noncoherent(double alpha, double beta);

  /// Parses `bpsk`, `bfsk`, `coherent:<alpha>,<beta>` or `noncoherent:<alpha>,<beta>`.
  /// Throws std::invalid_argument on anything else.
  static ModulationSpec parse(std::string_view text);

  bool is_bpsk() const noexcept {
    return family == ModulationFamily::coherent && alpha == 2.0 && beta == 1.0;
  }

  double conditional_ber(double gamma) const;
  /// dP_e/dγ, used by the quadrature cross-checks.
  double conditional_ber_derivative(double gamma) const;

  /// Canonical text form accepted by parse().
  std::string to_string() const;
};

}  // namespace vblast
