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

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vblast/modulation.hpp"
#include "vblast/montecarlo.hpp"

namespace vblast::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kCheckFailure = 2, kIo = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "start:stop:step" (inclusive stop, step > 0) or a single value, in dB.
std::vector<double> parse_snr_range(std::string_view text);

/// Comma-separated reals.
std::vector<double> parse_real_list(std::string_view text);

struct CurvesOptions {
  int n_rx = 2;
  std::vector<double> snr_db;
  ModulationSpec modulation = ModulationSpec::bpsk();
  /// Absolute SNR thresholds (dB) for outage columns Pr{γ_i < threshold}.
  std::vector<double> outage_db;
  /// Adds the 2×2 BPSK step-2 variant with the alternative denominator.
  bool alt_denominator = false;
};

/// Rectangular numeric table, formatted only when rendered.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Table curves_table(const CurvesOptions& options);
Table simulate_table(const mc::SimResult& result);

/// CSV with fixed 12-significant-digit numbers. A non-empty `manifest`
/// becomes a leading "# manifest: <name>" line.
std::string render_csv(const Table& table, std::string_view manifest = {});
nlohmann::json render_json(const Table& table, std::string_view manifest = {});

/// Entry point of the command-line tool; returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vblast::cli
