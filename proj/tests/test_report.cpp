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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "vblast/report.hpp"

using namespace vblast::report;

TEST_CASE("check constructors") {
  CHECK(Check::at_most("a", 1, 1e-8, 1e-7).passed);
  CHECK_FALSE(Check::at_most("a", 1, 2e-7, 1e-7).passed);
  CHECK(Check::at_least("b", 2, 0.96, 0.95).passed);
  CHECK(Check::within("c", 3, 1.0, 0.95, 1.05).passed);
  CHECK_FALSE(Check::within("c", 3, 1.06, 0.95, 1.05).passed);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(Check::at_most("n", 1, nan, 1.0).passed);
  CHECK_FALSE(Check::at_least("n", 1, nan, 1.0).passed);
  CHECK(Check::within("c", 3, 1.0, 0.95, 1.05).bounds_text() == "in [0.95, 1.05]");
  CHECK(Check::at_least("b", 2, 1.0, 0.95).bounds_text() == ">= 0.95");
}

TEST_CASE("report status") {
  Report r;
  CHECK(r.passed());
  r.checks.push_back(Check::at_most("ok", 1, 0.0, 1.0));
  r.checks.push_back(Check::at_most("bad", 2, 2.0, 1.0));
  CHECK_FALSE(r.passed());
  REQUIRE(r.failures().size() == 1);
  CHECK(r.failures()[0]->name == "bad");
}

TEST_CASE("json round trip") {
  Report r;
  r.tool_version = "1.2.3";
  r.seed = 42;
  r.trials = 1000;
  r.fault_injected = true;
  r.checks.push_back(Check::within("x", 7, 0.99, 0.95, 1.05, "ratio"));
  r.checks.push_back(Check::at_most("inf", 2, std::numeric_limits<double>::infinity(), 1.0));
  r.checks.push_back(Check::at_least("nan", 3, std::numeric_limits<double>::quiet_NaN(), 0.0));

  const nlohmann::json j = r;
  const auto text = j.dump();
  const auto back = nlohmann::json::parse(text).get<Report>();
  CHECK(back.tool_version == "1.2.3");
  CHECK(back.seed == 42);
  CHECK(back.trials == 1000);
  CHECK(back.fault_injected);
  REQUIRE(back.checks.size() == 3);
  CHECK(back.checks[0].name == "x");
  CHECK(back.checks[0].criterion == 7);
  CHECK(back.checks[0].measured == 0.99);
  CHECK(back.checks[0].lower == 0.95);
  CHECK(back.checks[0].upper == 1.05);
  CHECK(back.checks[0].detail == "ratio");
  CHECK(back.checks[0].passed);
  CHECK(std::isinf(back.checks[1].measured));
  CHECK_FALSE(back.checks[1].lower.has_value());
  CHECK(std::isnan(back.checks[2].measured));
  CHECK_FALSE(back.checks[2].passed);
}
