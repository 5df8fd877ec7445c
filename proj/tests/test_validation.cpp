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
#include <stdexcept>
#include <vector>

#include "vblast/analytic.hpp"
#include "vblast/validation.hpp"

using namespace vblast;
using namespace vblast::validation;

namespace {

bool all_passed(const std::vector<report::Check>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) {
      MESSAGE(c.name << " measured " << c.measured << " " << c.bounds_text());
      return false;
    }
  }
  return !checks.empty();
}

}  // namespace

TEST_CASE("oracles agree with the engine") {
  for (int n = 2; n <= 4; ++n) {
    for (double x : {0.05, 0.5, 1.0, 3.0, 10.0}) {
      CHECK(mrc_cdf_oracle(n, x) == doctest::Approx(analytic::mrc_outage_cdf(n, x)).epsilon(1e-13));
      CHECK(step1_cdf_oracle(n, x) == doctest::Approx(analytic::outage_cdf_step1(n, x)).epsilon(1e-11));
      CHECK(step2_cdf_oracle(n, x) == doctest::Approx(analytic::outage_cdf_step2(n, x)).epsilon(1e-12));
    }
  }
  const auto bpsk = ModulationSpec::bpsk();
  const auto bfsk = ModulationSpec::bfsk();
  for (double g : {1.0, 10.0, 100.0}) {
    CHECK(std::abs(quadrature_ber(bpsk, g, [](double x) { return step1_cdf_oracle(2, x); }) -
                   analytic::ber_step1(bpsk, 2, g)) < 1e-9);
    CHECK(std::abs(quadrature_ber(bfsk, g, [](double x) { return step2_cdf_oracle(3, x); }) -
                   analytic::ber_step2(bfsk, 3, g)) < 1e-9);
    CHECK(bfsk_2x2_step2_literal(g) == doctest::Approx(analytic::ber_step2(bfsk, 2, g)).epsilon(1e-12));
    CHECK(bpsk_2x2_step1_literal(g) == doctest::Approx(analytic::ber_step1(bpsk, 2, g)).epsilon(1e-10));
    CHECK(bpsk_2x2_step2_literal(g) == doctest::Approx(analytic::ber_step2(bpsk, 2, g)).epsilon(1e-10));
  }
}

TEST_CASE("generic modulation closed form against quadrature") {
  const auto mod = ModulationSpec::coherent(1.0, 0.5);
  for (double g : {0.5, 5.0, 50.0}) {
    CHECK(std::abs(quadrature_ber(mod, g, [](double x) { return step1_cdf_oracle(3, x); }) -
                   analytic::ber_step1(mod, 3, g)) < 1e-9);
  }
}

TEST_CASE("perturbed tables differ only where intended") {
  const auto base = analytic::coefficients(3);
  const auto p = perturbed_coefficients(3, kFaultDelta);
  CHECK(p.a(2) == doctest::Approx(base.a(2) + kFaultDelta));
  CHECK(p.a(3) == base.a(3));
  CHECK(p.b.values == base.b.values);
  CHECK(p.alpha(2) != base.alpha(2));
}

TEST_CASE("closed-form criteria pass") {
  Options opts;
  opts.trials = 20000;
  for (int k : {1, 2, 7, 9}) {
    INFO("criterion " << k);
    CHECK(all_passed(run_criterion(k, opts)));
  }
}

TEST_CASE("fault injection is detected") {
  Options opts;
  opts.trials = 20000;
  opts.inject_fault = true;
  CHECK_FALSE(all_passed(run_criterion(1, opts)));
  CHECK_FALSE(all_passed(run_criterion(2, opts)));
}

TEST_CASE("criterion selection") {
  CHECK_THROWS_AS(run_criterion(0, Options{}), std::out_of_range);
  CHECK_THROWS_AS(run_criterion(kCriteria + 1, Options{}), std::out_of_range);
  for (int k = 1; k <= kCriteria; ++k) CHECK_FALSE(criterion_title(k).empty());
  Options opts;
  opts.trials = 20000;
  opts.seed = 3;
  const std::vector<int> pick{7};
  const auto r = run_validation(opts, pick);
  CHECK(r.passed());
  CHECK(r.seed == 3);
  CHECK(r.trials == 20000);
  for (const auto& c : r.checks) CHECK(c.criterion == 7);
}
