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

#include "vblast/report.hpp"

#include <cmath>

#include "vblast/format.hpp"

namespace vblast::report {
namespace {

bool in_bounds(double measured, const std::optional<double>& lower,
               const std::optional<double>& upper) {
  if (std::isnan(measured)) return false;
  if (lower && !(measured >= *lower)) return false;
  if (upper && !(measured <= *upper)) return false;
  return true;
}

Check make(std::string name, int criterion, double measured, std::optional<double> lower,
           std::optional<double> upper, std::string detail) {
  Check c;
  c.name = std::move(name);
  c.criterion = criterion;
  c.measured = measured;
  c.lower = lower;
  c.upper = upper;
  c.passed = in_bounds(measured, lower, upper);
  c.detail = std::move(detail);
  return c;
}

// JSON has no infinities or NaN; those travel as strings.
nlohmann::json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_shortest(v);
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  throw nlohmann::json::other_error::create(501, "bad number '" + s + "'", &j);
}

}  // namespace

Check Check::at_most(std::string name, int criterion, double measured, double limit,
                     std::string detail) {
  return make(std::move(name), criterion, measured, std::nullopt, limit, std::move(detail));
}

Check Check::at_least(std::string name, int criterion, double measured, double limit,
                      std::string detail) {
  return make(std::move(name), criterion, measured, limit, std::nullopt, std::move(detail));
}

Check Check::within(std::string name, int criterion, double measured, double lower, double upper,
                    std::string detail) {
  return make(std::move(name), criterion, measured, lower, upper, std::move(detail));
}

std::string Check::bounds_text() const {
  if (lower && upper) {
    return "in [" + format_shortest(*lower) + ", " + format_shortest(*upper) + "]";
  }
  if (upper) return "<= " + format_shortest(*upper);
  if (lower) return ">= " + format_shortest(*lower);
  return "unbounded";
}

bool Report::passed() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::vector<const Check*> Report::failures() const {
  std::vector<const Check*> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(&c);
  }
  return out;
}

void to_json(nlohmann::json& j, const Check& check) {
  j = nlohmann::json{{"name", check.name},
                     {"criterion", check.criterion},
                     {"measured", number_to_json(check.measured)},
                     {"lower", check.lower ? number_to_json(*check.lower) : nlohmann::json()},
                     {"upper", check.upper ? number_to_json(*check.upper) : nlohmann::json()},
                     {"passed", check.passed},
                     {"detail", check.detail}};
}

void from_json(const nlohmann::json& j, Check& check) {
  check.name = j.at("name").get<std::string>();
  check.criterion = j.at("criterion").get<int>();
  check.measured = number_from_json(j.at("measured"));
  check.lower.reset();
  check.upper.reset();
  if (!j.at("lower").is_null()) check.lower = number_from_json(j.at("lower"));
  if (!j.at("upper").is_null()) check.upper = number_from_json(j.at("upper"));
  check.passed = j.at("passed").get<bool>();
  check.detail = j.value("detail", std::string{});
}

void to_json(nlohmann::json& j, const Report& report) {
  j = nlohmann::json{{"tool_version", report.tool_version},
                     {"seed", report.seed},
                     {"trials", report.trials},
                     {"fault_injected", report.fault_injected},
                     {"passed", report.passed()},
                     {"checks", report.checks}};
}

void from_json(const nlohmann::json& j, Report& report) {
  report.tool_version = j.at("tool_version").get<std::string>();
  report.seed = j.at("seed").get<std::uint64_t>();
  report.trials = j.at("trials").get<std::uint64_t>();
  report.fault_injected = j.at("fault_injected").get<bool>();
  report.checks = j.at("checks").get<std::vector<Check>>();
}

}  // namespace vblast::report
