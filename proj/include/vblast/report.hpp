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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace vblast::report {

/// One measured quantity against its acceptance bounds.
struct Check {
  std::string name;
  int criterion = 0;
  double measured = 0.0;
  /// Inclusive bounds; a missing bound is unbounded on that side.
  std::optional<double> lower;
  std::optional<double> upper;
  bool passed = false;
  std::string detail;

  static Check at_most(std::string name, int criterion, double measured, double limit,
                       std::string detail = {});
  static Check at_least(std::string name, int criterion, double measured, double limit,
                        std::string detail = {});
  static Check within(std::string name, int criterion, double measured, double lower,
                      double upper, std::string detail = {});

  /// "<= 1e-07", ">= 0.95", "in [0.95, 1.05]".
  std::string bounds_text() const;
};

struct Report {
  std::string tool_version;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  bool fault_injected = false;
  std::vector<Check> checks;

  bool passed() const noexcept;
  std::vector<const Check*> failures() const;
};

void to_json(nlohmann::json& j, const Check& check);
void from_json(const nlohmann::json& j, Check& check);
void to_json(nlohmann::json& j, const Report& report);
void from_json(const nlohmann::json& j, Report& report);

}  // namespace vblast::report
