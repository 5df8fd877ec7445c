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

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "vblast/analytic.hpp"
#include "vblast/modulation.hpp"
#include "vblast/report.hpp"

/// Acceptance suite: closed forms against independent oracles, Monte Carlo
/// against closed forms, and the determinism contract of the simulator.
namespace vblast::validation {

inline constexpr int kCriteria = 10;

struct Options {
  /// Monte Carlo trials per estimate.
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  /// Perturb the first step-1 CDF coefficient a_{n−1} by kFaultDelta in the
  /// tables under test; the oracles are unaffected.
  bool inject_fault = false;
};

inline constexpr double kFaultDelta = 1e-3;

/// One-line title of a criterion (1-based).
std::string_view criterion_title(int criterion);

/// Throws std::out_of_range for criteria outside [1, kCriteria].
std::vector<report::Check> run_criterion(int criterion, const Options& options);

/// Runs the selected criteria (all when empty) in ascending order.
report::Report run_validation(const Options& options, std::span<const int> criteria = {});

// ---------------------------------------------------------------------------
// Oracles, computed without the coefficient tables.

/// n-branch MRC outage via the regularized lower incomplete gamma P(n, x).
double mrc_cdf_oracle(int n, double x);
/// Step-1 CDF from the defining double sums, in extended precision.
double step1_cdf_oracle(int n_rx, double x);
/// Step-2 CDF as the distribution of the smaller of two MRC gains.
double step2_cdf_oracle(int n_rx, double x);

/// −∫₀^∞ P_e′(γ)·cdf(γ/γ₀) dγ by adaptive double-exponential quadrature
/// (substituting γ = t² to remove the coherent 1/√γ singularity).
double quadrature_ber(const ModulationSpec& mod, double gamma0,
                      const std::function<double(double)>& cdf);

/// The 2×2 closed forms written out term by term, in 50-digit arithmetic.
double bfsk_2x2_step2_literal(double gamma0);
double bpsk_2x2_step1_literal(double gamma0);
/// With the (2+γ₀)² denominator in the last term.
double bpsk_2x2_step2_literal(double gamma0);

/// Table for n_rx with a_{n−1} shifted by delta and its dependents (α, σ)
/// rebuilt.
analytic::OrderedSnrCoefficients perturbed_coefficients(int n_rx, double delta);

}  // namespace vblast::validation
